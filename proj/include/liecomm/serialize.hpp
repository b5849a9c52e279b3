#ifndef LIECOMM_SERIALIZE_HPP
#define LIECOMM_SERIALIZE_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "liecomm/solver.hpp"

namespace liecomm {

// Insertion-ordered JSON keeps output key order (and therefore bytes)
// stable across runs.
using Json = nlohmann::ordered_json;

Json element_to_json(const Element& x);
Element element_from_json(AlgebraPtr g, const Json& j);

Json frame_to_json(const CartanFrame& frame);
CartanFrame frame_from_json(AlgebraPtr g, const Json& j);

Json certificate_to_json(const AlgebraSpec& spec, const CommutatorCertificate& cert,
                         uint64_t seed);
CommutatorCertificate certificate_from_json(AlgebraPtr g, const Json& j);

/// One trace line per step: {"iter":k,"root":i,"b0_before":x,"b0_after":y,"decrease":z}.
Json trace_step_to_json(int iter, const JacobiStep& step);
std::string trace_to_jsonl(const std::vector<JacobiStep>& steps);
std::string trace_to_csv(const std::vector<JacobiStep>& steps);
std::string trace_to_json_array(const std::vector<JacobiStep>& steps);

Json load_json_file(const std::string& path);           // throws ParseError
void write_text_file(const std::string& path, const std::string& text);
std::vector<double> coords_from_json(const Json& j);    // throws ParseError

}  // namespace liecomm

#endif
