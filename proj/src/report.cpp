#include "coarsemaps/report.hpp"

#include <sstream>

namespace coarsemaps {

std::string profile_csv(const DefectProfile& prof) {
  std::ostringstream out;
  out << "kind,radius,set_size,max_norm,mode\n";
  for (const auto& row : prof.rows) {
    out << prof.kind << ',' << row.radius << ',' << row.set_size << ','
        << row.max_norm << ',' << (row.exact ? "exact" : "sampled") << '\n';
  }
  return out.str();
}

ordered_json profile_json(const DefectProfile& prof) {
  ordered_json rows = ordered_json::array();
  for (const auto& row : prof.rows) {
    rows.push_back({{"radius", row.radius},
                    {"set_size", row.set_size},
                    {"max_norm", row.max_norm},
                    {"mode", row.exact ? "exact" : "sampled"}});
  }
  return {{"kind", prof.kind},
          {"rows", rows},
          {"classification", to_string(prof.classification)}};
}

ordered_json elems_json(const std::vector<Elem>& elems) {
  ordered_json out = ordered_json::array();
  for (const Elem& e : elems) out.push_back(encode_elem(e));
  return out;
}

ordered_json witness_json(const WitnessReport& rep) {
  return {{"condition", to_string(rep.condition)},
          {"scale", rep.scale},
          {"probe_radius", rep.probe_radius},
          {"worst_witness_norm", rep.worst_witness_norm},
          {"witness_set", elems_json(rep.witness_set)},
          {"exhausted", rep.exhausted}};
}

ordered_json normality_json(const NormalityReport& rep) {
  ordered_json q2 = {{"pass", rep.q2_pass}};
  if (rep.q2_counterexample) {
    q2["counterexample"] = {encode_elem(rep.q2_counterexample->first),
                            encode_elem(rep.q2_counterexample->second)};
  }
  return {{"target_kind", rep.target_kind},
          {"q1", {{"profile", profile_json(rep.q1)}, {"pass", rep.q1_pass}}},
          {"q2", q2},
          {"q3",
           {{"transversal", elems_json(rep.q3_transversal)},
            {"uncovered", elems_json(rep.q3_uncovered)},
            {"pass", rep.q3_pass}}},
          {"q4", {{"n", rep.q4_n}, {"pass", rep.q4_pass}}},
          {"exhausted", rep.exhausted},
          {"note", rep.note},
          {"all_pass", rep.all_pass()}};
}

}  // namespace coarsemaps
