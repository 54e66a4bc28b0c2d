#ifndef UPACKET_PARAM_IO_HPP
#define UPACKET_PARAM_IO_HPP

#include <optional>
#include <string>
#include <utility>

#include <json.hpp>

#include "upacket/packets.hpp"

namespace upacket {

struct ParameterFile {
    VeryCuspidalDatum datum;
    std::optional<std::pair<int, int>> endoscopic_signs;
};

/// Parses and validates a parameter document. Malformed JSON and invariant
/// violations both surface as ValidationError.
ParameterFile parse_parameter_file(const std::string& text);
ParameterFile load_parameter_file(const std::string& path);

nlohmann::json component_to_json(const SkewCharacterComponent& c);
nlohmann::json datum_to_json(const VeryCuspidalDatum& d);
nlohmann::json embedding_to_json(const EmbeddingClass& x);
nlohmann::json packet_to_json(const PacketDescription& p);
nlohmann::json split_to_json(const EndoscopicSplit& s);

} // namespace upacket

#endif
