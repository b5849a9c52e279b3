#include "liecomm/serialize.hpp"

#include <fstream>

#include "liecomm/errors.hpp"

namespace liecomm {

using linalg::Vec;

Json element_to_json(const Element& x) { return Json(x.coords); }

std::vector<double> coords_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected a JSON array of coordinates");
  Vec coords;
  coords.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) throw ParseError("coordinate entries must be numbers");
    coords.push_back(v.get<double>());
  }
  return coords;
}

Element element_from_json(AlgebraPtr g, const Json& j) {
  return make_element(g, coords_from_json(j));
}

Json frame_to_json(const CartanFrame& frame) {
  Json j;
  j["rank"] = frame.rank();
  j["positive_roots"] = frame.roots.size();
  Json csa = Json::array();
  for (const auto& b : frame.h.basis) csa.push_back(element_to_json(b));
  j["csa"] = csa;
  j["h_ref"] = element_to_json(frame.h_ref);
  Json roots = Json::array();
  for (const auto& r : frame.roots) {
    Json jr;
    jr["alpha"] = Json(r.alpha);
    jr["e"] = element_to_json(r.e);
    jr["f"] = element_to_json(r.f);
    roots.push_back(jr);
  }
  j["roots"] = roots;
  j["alpha_sigma_min"] = frame.alpha_sigma_min;
  j["stall_constant"] = frame.stall_constant;
  return j;
}

CartanFrame frame_from_json(AlgebraPtr g, const Json& j) {
  try {
    CartanFrame frame;
    frame.algebra = g;
    frame.h.algebra = g;
    for (const auto& b : j.at("csa")) frame.h.basis.push_back(element_from_json(g, b));
    frame.h_ref = element_from_json(g, j.at("h_ref"));
    for (const auto& jr : j.at("roots")) {
      Root r;
      r.alpha = coords_from_json(jr.at("alpha"));
      r.e = element_from_json(g, jr.at("e"));
      r.f = element_from_json(g, jr.at("f"));
      frame.roots.push_back(std::move(r));
    }
    frame.alpha_sigma_min = j.value("alpha_sigma_min", 0.0);
    frame.stall_constant = j.value("stall_constant", 0.0);
    return frame;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed frame JSON: ") + e.what());
  }
}

Json certificate_to_json(const AlgebraSpec& spec, const CommutatorCertificate& cert,
                         uint64_t seed) {
  Json j;
  j["algebra_spec"] = spec.to_string();
  j["seed"] = seed;
  j["X"] = element_to_json(cert.x);
  j["Y_A"] = element_to_json(cert.y_a);
  j["Y_B"] = element_to_json(cert.y_b);
  j["residual_A"] = cert.residual_a;
  j["residual_B"] = cert.residual_b;
  j["regularity_margin"] = cert.regularity_margin;
  Json gens = Json::array();
  for (const auto& z : cert.q_generators) gens.push_back(element_to_json(z));
  j["generators"] = gens;
  j["frame_snapshot"] = frame_to_json(cert.frame_snapshot);
  return j;
}

CommutatorCertificate certificate_from_json(AlgebraPtr g, const Json& j) {
  try {
    CommutatorCertificate cert;
    cert.x = element_from_json(g, j.at("X"));
    cert.y_a = element_from_json(g, j.at("Y_A"));
    cert.y_b = element_from_json(g, j.at("Y_B"));
    cert.residual_a = j.value("residual_A", 0.0);
    cert.residual_b = j.value("residual_B", 0.0);
    cert.regularity_margin = j.value("regularity_margin", 0.0);
    if (j.contains("generators"))
      for (const auto& jz : j["generators"]) cert.q_generators.push_back(element_from_json(g, jz));
    if (j.contains("frame_snapshot"))
      cert.frame_snapshot = frame_from_json(g, j["frame_snapshot"]);
    return cert;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed certificate JSON: ") + e.what());
  }
}

Json trace_step_to_json(int iter, const JacobiStep& step) {
  Json j;
  j["iter"] = iter;
  j["root"] = step.root_index;
  j["b0_before"] = step.b0_before;
  j["b0_after"] = step.b0_after;
  j["decrease"] = step.decrease;
  return j;
}

std::string trace_to_jsonl(const std::vector<JacobiStep>& steps) {
  std::string out;
  for (size_t i = 0; i < steps.size(); ++i) {
    out += trace_step_to_json(static_cast<int>(i), steps[i]).dump();
    out += '\n';
  }
  return out;
}

std::string trace_to_csv(const std::vector<JacobiStep>& steps) {
  std::string out = "iter,root,b0_before,b0_after,decrease\n";
  for (size_t i = 0; i < steps.size(); ++i) {
    const Json row = trace_step_to_json(static_cast<int>(i), steps[i]);
    out += std::to_string(i) + "," + std::to_string(steps[i].root_index) + "," +
           row["b0_before"].dump() + "," + row["b0_after"].dump() + "," +
           row["decrease"].dump() + "\n";
  }
  return out;
}

std::string trace_to_json_array(const std::vector<JacobiStep>& steps) {
  Json arr = Json::array();
  for (size_t i = 0; i < steps.size(); ++i)
    arr.push_back(trace_step_to_json(static_cast<int>(i), steps[i]));
  return arr.dump(2) + "\n";
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  try {
    Json j;
    in >> j;
    return j;
  } catch (const Json::exception& e) {
    throw ParseError("cannot parse JSON in " + path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::generic, "cannot write file: " + path);
  out << text;
}

}  // namespace liecomm
