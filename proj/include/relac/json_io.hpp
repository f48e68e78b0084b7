#ifndef RELAC_JSON_IO_HPP
#define RELAC_JSON_IO_HPP

#include <iosfwd>
#include <string>

#include <json.hpp>

namespace relac {

using json = nlohmann::ordered_json;

// Deterministic serializer: insertion-ordered keys, floats printed with 17
// significant digits, so identical config + seed reproduce identical bytes.
void write_json(const json& j, std::ostream& os, int indent = 2);
std::string json_to_string(const json& j, int indent = 2);

json meta_block(const std::string& command, const json& effective_config);

}  // namespace relac

#endif
