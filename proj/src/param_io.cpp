#include "upacket/param_io.hpp"

#include <fstream>
#include <sstream>

namespace upacket {

using nlohmann::json;

namespace {

json parse_or_throw(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw ValidationError("parameter file syntax", "not valid JSON");
    return j;
}

} // namespace

ParameterFile parse_parameter_file(const std::string& text) {
    const json j = parse_or_throw(text);
    ParameterFile f;
    if (!j.is_object() || !j.contains("q0") || !j.contains("components"))
        throw ValidationError("parameter file shape",
                              "expected an object with q0 and components");
    f.datum.q0 = j.at("q0").get<std::uint64_t>();
    if (!is_odd_prime(f.datum.q0))
        throw ValidationError("odd prime residue characteristic",
                              "q0 must be an odd prime");
    for (const auto& cj : j.at("components")) {
        SkewCharacterComponent c;
        c.n = cj.at("n").get<int>();
        c.level = cj.at("level").get<int>();
        c.tame_exponent = cj.value("tame", std::uint64_t{0});
        c.omega = cj.value("omega", 1);
        c.skew_sign = c.omega;
        if (c.n >= 1 && c.n % 2 == 1 && c.level > 0) {
            if (!cj.contains("beta_log"))
                throw ValidationError("wild part presence",
                                      "positive level requires beta_log");
            c.beta = FieldElement::from_log(FieldSpec(f.datum.q0, c.n),
                                            cj.at("beta_log").get<std::uint64_t>());
        } else if (cj.contains("beta_log") && c.level == 0) {
            throw ValidationError("wild part presence",
                                  "level zero admits no beta_log");
        }
        f.datum.components.push_back(std::move(c));
    }
    if (j.contains("endoscopic_signs")) {
        const auto& s = j.at("endoscopic_signs");
        if (!s.is_array() || s.size() != 2)
            throw ValidationError("endoscopic sign parity",
                                  "endoscopic_signs must be a pair");
        f.endoscopic_signs = {s[0].get<int>(), s[1].get<int>()};
    }
    f.datum.validate();
    return f;
}

ParameterFile load_parameter_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ValidationError("parameter file syntax",
                              "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_parameter_file(ss.str());
}

json component_to_json(const SkewCharacterComponent& c) {
    json j{{"n", c.n},
           {"level", c.level},
           {"tame", c.tame_exponent},
           {"omega", c.omega},
           {"skew_sign", c.skew_sign}};
    if (c.beta) j["beta_log"] = c.beta->log();
    return j;
}

json datum_to_json(const VeryCuspidalDatum& d) {
    json comps = json::array();
    for (const auto& c : d.components) comps.push_back(component_to_json(c));
    return json{{"q0", d.q0}, {"components", comps}};
}

json embedding_to_json(const EmbeddingClass& x) {
    return json{{"odd", x.odd_part}, {"even", x.even_part}};
}

json packet_to_json(const PacketDescription& p) {
    json members = json::array();
    for (const auto& m : p.members) {
        json tags = json::array();
        for (SignTag t : m.amendments)
            tags.push_back(t == SignTag::Quadratic ? "quadratic" : "trivial");
        json comps = json::array();
        for (const auto& c : m.amended_components)
            comps.push_back(component_to_json(c));
        members.push_back(json{{"class", embedding_to_json(m.x)},
                               {"amendments", tags},
                               {"components", comps}});
    }
    json bc = json::array();
    for (const auto& c : p.base_change) bc.push_back(component_to_json(c));
    return json{{"parameter", datum_to_json(p.parameter)},
                {"members", members},
                {"base_change", bc}};
}

json split_to_json(const EndoscopicSplit& s) {
    json factors = json::array();
    for (const auto& f : s.factors) factors.push_back(packet_to_json(f));
    return json{{"n1", s.datum.n1},
                {"n2", s.datum.n2},
                {"signs", {s.datum.sign1, s.datum.sign2}},
                {"index_set1", s.datum.index_set1},
                {"index_set2", s.datum.index_set2},
                {"factors", factors}};
}

} // namespace upacket
