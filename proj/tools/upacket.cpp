// Command-line front end: parameter-file validation, packet and base-change
// reports, filtration tables, amending/transfer characters with their
// finite-field oracles, Hecke exponents, and the verification grids.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "upacket/amending.hpp"
#include "upacket/golden.hpp"
#include "upacket/hecke.hpp"
#include "upacket/packets.hpp"
#include "upacket/param_io.hpp"

namespace {

using namespace upacket;
using nlohmann::json;

std::uint64_t grid_cutoff() {
    if (const char* env = std::getenv("UPACKET_GRID_CUTOFF"))
        return std::strtoull(env, nullptr, 10);
    return 1000000;
}

std::vector<int> parse_id_list(const std::string& s) {
    std::vector<int> out;
    std::istringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(std::stoi(tok));
    return out;
}

EmbeddingClass class_from_even_ids(const std::vector<int>& ids,
                                   const std::vector<int>& even) {
    EmbeddingClass x;
    x.index_set = ids;
    for (int id : ids) {
        if (std::find(even.begin(), even.end(), id) != even.end())
            x.even_part.push_back(id);
        else
            x.odd_part.push_back(id);
    }
    if (x.even_part.size() % 2 != 0)
        throw ValidationError("even partition size",
                              "the even part must have even cardinality");
    return x;
}

std::string partition_str(const EmbeddingClass& x) {
    std::ostringstream os;
    os << "Io={";
    for (std::size_t i = 0; i < x.odd_part.size(); ++i)
        os << (i ? "," : "") << x.odd_part[i];
    os << "} Ie={";
    for (std::size_t i = 0; i < x.even_part.size(); ++i)
        os << (i ? "," : "") << x.even_part[i];
    os << "}";
    return os.str();
}

std::string tag_str(SignTag t) {
    return t == SignTag::Quadratic ? "quadratic" : "trivial";
}

int cmd_packet(const std::string& path, bool as_json, bool verify) {
    const ParameterFile f = load_parameter_file(path);
    const auto& datum = f.datum;

    if (verify && datum.level() > 0) {
        std::vector<int> ids, degrees;
        for (std::size_t i = 0; i < datum.components.size(); ++i) {
            ids.push_back(static_cast<int>(i));
            degrees.push_back(datum.components[i].n);
        }
        for (const auto& x : enumerate_embeddings(ids))
            for (int i0 : ids)
                for (VertexKind w : {VertexKind::Y, VertexKind::Z}) {
                    const auto a = amending_character(w, i0, x, datum.level(),
                                                      datum.q0, degrees);
                    const auto b = amending_brute_force(
                        w, i0, x, datum.level(), datum.q0, degrees,
                        OracleMode::Both, grid_cutoff());
                    if (!(a == b))
                        throw InconsistencyError(
                            "formula and oracle disagree at " +
                            partition_str(x) + " i0=" + std::to_string(i0));
                }
    }

    if (f.endoscopic_signs || !datum.is_stable()) {
        int s1, s2;
        if (f.endoscopic_signs) {
            s1 = f.endoscopic_signs->first;
            s2 = f.endoscopic_signs->second;
        } else {
            s1 = datum.components.front().skew_sign;
            s2 = s1;
            for (const auto& c : datum.components)
                if (c.skew_sign != s1) s2 = c.skew_sign;
            if (s2 == s1) {
                // One empty factor; pick the legal second sign.
                const int n = datum.total_degree();
                s2 = n % 2 == 0 ? -s1 : s1;
            }
        }
        const auto split = endoscopic_split(datum, s1, s2);
        if (as_json) {
            std::cout << split_to_json(split).dump(2) << "\n";
            return 0;
        }
        std::cout << "endoscopic split: U" << split.datum.n1 << " x U"
                  << split.datum.n2 << " signs (" << (split.datum.sign1 > 0 ? "+" : "-")
                  << "," << (split.datum.sign2 > 0 ? "+" : "-") << ")\n";
        for (const auto& fac : split.factors) {
            std::cout << "factor with " << fac.parameter.components.size()
                      << " component(s): " << fac.members.size() << " member(s)\n";
            for (const auto& m : fac.members) {
                std::cout << "  " << partition_str(m.x) << " amendments:";
                for (std::size_t i = 0; i < m.amendments.size(); ++i)
                    std::cout << " " << tag_str(m.amendments[i]);
                std::cout << "\n";
            }
        }
        return 0;
    }

    const auto packet = assemble_packet(datum);
    if (as_json) {
        std::cout << packet_to_json(packet).dump(2) << "\n";
        return 0;
    }
    std::cout << "packet with " << packet.members.size() << " member(s), #I="
              << datum.components.size() << ", n=" << datum.total_degree()
              << ", level=" << datum.level() << "\n";
    for (const auto& m : packet.members) {
        std::cout << "  " << partition_str(m.x) << " amendments:";
        for (std::size_t i = 0; i < m.amendments.size(); ++i)
            std::cout << " " << tag_str(m.amendments[i]);
        std::cout << "\n";
    }
    std::cout << "base change components:\n";
    for (const auto& c : packet.base_change) {
        std::cout << "  n=" << c.n << " level=" << c.level;
        if (c.beta) std::cout << " beta_log=" << c.beta->log();
        std::cout << " tame=" << c.tame_exponent << " omega=" << c.omega << "\n";
    }
    return 0;
}

int cmd_embeddings(const std::string& path, bool as_json) {
    const ParameterFile f = load_parameter_file(path);
    std::vector<int> ids;
    for (std::size_t i = 0; i < f.datum.components.size(); ++i)
        ids.push_back(static_cast<int>(i));
    const auto classes = enumerate_embeddings(ids);
    if (as_json) {
        json arr = json::array();
        for (const auto& x : classes) arr.push_back(embedding_to_json(x));
        std::cout << json{{"count", classes.size()}, {"classes", arr}}.dump(2)
                  << "\n";
        return 0;
    }
    std::cout << classes.size() << " embedding class(es)\n";
    for (const auto& x : classes) std::cout << "  " << partition_str(x) << "\n";
    return 0;
}

int cmd_filtration(const std::string& path, const std::string& lattice,
                   const std::string& group, const std::string& even_ids,
                   int i0, bool as_json) {
    const ParameterFile f = load_parameter_file(path);
    const int d = f.datum.level();
    if (d < 1)
        throw ValidationError("positive level",
                              "filtration tables require level >= 1");
    std::vector<int> ids, degrees;
    for (std::size_t i = 0; i < f.datum.components.size(); ++i) {
        ids.push_back(static_cast<int>(i));
        degrees.push_back(f.datum.components[i].n);
    }
    const auto x = class_from_even_ids(ids, parse_id_list(even_ids));
    HigherKind kind;
    if (lattice == "Lambda") kind = HigherKind::Lambda;
    else if (lattice == "My") kind = HigherKind::My;
    else if (lattice == "Mz") kind = HigherKind::Mz;
    else throw ValidationError("lattice kind", "unknown lattice " + lattice);
    FiltrationGroup g;
    if (group == "H1") g = FiltrationGroup::H1;
    else if (group == "J1") g = FiltrationGroup::J1;
    else if (group == "J") g = FiltrationGroup::J;
    else throw ValidationError("filtration group", "unknown group " + group);

    const auto m = filtration_matrix(g, kind, d, x, i0, degrees);
    if (as_json) {
        json rows = json::array();
        for (const auto& r : m.entries) {
            json row = json::array();
            for (std::int64_t v : r)
                if (v == BlockValuationMatrix::BULLET) row.push_back("*");
                else row.push_back(v);
            rows.push_back(row);
        }
        std::cout << json{{"labels", m.labels}, {"entries", rows}}.dump(2)
                  << "\n";
        return 0;
    }
    std::cout << lattice << " " << group << " d=" << d << " i0=" << i0 << "\n"
              << m.format();
    return 0;
}

int cmd_amend(const std::string& path, const std::string& even_ids, int i0_flag,
              bool oracle, bool as_json) {
    const ParameterFile f = load_parameter_file(path);
    const int d = f.datum.level();
    if (d < 1)
        throw ValidationError("positive level",
                              "amending characters require level >= 1");
    std::vector<int> ids, degrees;
    for (std::size_t i = 0; i < f.datum.components.size(); ++i) {
        ids.push_back(static_cast<int>(i));
        degrees.push_back(f.datum.components[i].n);
    }
    const auto x = class_from_even_ids(ids, parse_id_list(even_ids));
    std::vector<int> targets = i0_flag >= 0 ? std::vector<int>{i0_flag} : ids;

    json out = json::array();
    for (int i0 : targets) {
        const auto ny = amending_character(VertexKind::Y, i0, x, d, f.datum.q0,
                                           degrees);
        const auto nz = amending_character(VertexKind::Z, i0, x, d, f.datum.q0,
                                           degrees);
        const auto chi = transfer_character(i0, x, d, f.datum.q0, degrees);
        if (oracle) {
            const auto oy = amending_brute_force(VertexKind::Y, i0, x, d,
                                                 f.datum.q0, degrees,
                                                 OracleMode::Both, grid_cutoff());
            const auto oz = amending_brute_force(VertexKind::Z, i0, x, d,
                                                 f.datum.q0, degrees,
                                                 OracleMode::Both, grid_cutoff());
            if (!(oy == ny) || !(oz == nz))
                throw InconsistencyError("formula and oracle disagree at i0=" +
                                         std::to_string(i0));
        }
        if (as_json) {
            out.push_back(json{{"i0", i0},
                               {"nu_y", tag_str(ny.gl)},
                               {"nu_z", tag_str(nz.gl)},
                               {"transfer", tag_str(chi.gl)}});
        } else {
            std::cout << "i0=" << i0 << " " << partition_str(x)
                      << " nu_y=" << tag_str(ny.gl)
                      << " nu_z=" << tag_str(nz.gl)
                      << " transfer=" << tag_str(chi.gl)
                      << (oracle ? " (oracle ok)" : "") << "\n";
        }
    }
    if (as_json) std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_hecke(const std::string& path, const std::string& even_ids, int i0,
              const std::string& gl_json, bool as_json) {
    const ParameterFile f = load_parameter_file(path);
    std::vector<int> ids;
    for (std::size_t i = 0; i < f.datum.components.size(); ++i)
        ids.push_back(static_cast<int>(i));
    if (i0 < 0 || static_cast<std::size_t>(i0) >= ids.size())
        throw ValidationError("component membership", "need a valid --i0");
    const auto x = class_from_even_ids(ids, parse_id_list(even_ids));
    const int n = f.datum.components[static_cast<std::size_t>(i0)].n;

    bool have_match = false;
    bool match = false;
    if (!gl_json.empty()) {
        const json cj = json::parse(gl_json, nullptr, false);
        if (cj.is_discarded())
            throw ValidationError("parameter file syntax",
                                  "--gl must be a JSON component");
        SkewCharacterComponent gl;
        gl.n = cj.at("n").get<int>();
        gl.level = cj.at("level").get<int>();
        gl.tame_exponent = cj.value("tame", std::uint64_t{0});
        gl.omega = cj.value("omega", 1);
        gl.skew_sign = gl.omega;
        if (gl.level > 0)
            gl.beta = FieldElement::from_log(FieldSpec(f.datum.q0, gl.n),
                                             cj.at("beta_log").get<std::uint64_t>());
        validate_component(gl, f.datum.q0);
        match = match_test(gl, x, f.datum, i0, VertexKind::Y);
        have_match = true;
    }

    json out = json::array();
    for (bool m : std::vector<bool>{false, true}) {
        if (have_match && m != match) continue;
        const auto p = hecke_params(m, n);
        const auto pts = reducibility_points(p, n);
        if (as_json) {
            json jp = json::array();
            for (const auto& r : pts.points) jp.push_back(r.str());
            out.push_back(json{{"match", m},
                               {"r_y", p.r_y.str()},
                               {"r_z", p.r_z.str()},
                               {"points", jp}});
        } else {
            std::cout << (m ? "matching" : "non-matching") << ": r_y=" << p.r_y.str()
                      << " r_z=" << p.r_z.str() << " points {";
            for (std::size_t k = 0; k < pts.points.size(); ++k)
                std::cout << (k ? ", " : "") << pts.points[k].str();
            std::cout << "}\n";
        }
    }
    if (have_match && !as_json)
        std::cout << "match test: " << (match ? "true" : "false") << "\n";
    if (as_json) std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_verify(const std::string& grid, const std::string& report_path,
               const std::string& tables_path, int jobs, bool inject_fault,
               bool as_json) {
    std::ostringstream report;
    bool ok = true;
    std::string first_fail;

    if (grid == "appendix" || grid == "small" || grid == "full") {
        if (grid != "appendix") {
            const std::vector<std::uint64_t> q0s =
                grid == "small" ? std::vector<std::uint64_t>{3}
                                : std::vector<std::uint64_t>{3, 5};
            const auto pts = make_grid(q0s, {1, 3}, 4, 3);
            const auto outs = run_grid(pts, jobs, OracleMode::Both, grid_cutoff(),
                                       inject_fault);
            const auto lines = format_grid_report(pts, outs);
            for (const auto& l : lines) report << l << "\n";
            for (std::size_t i = 0; i < outs.size(); ++i)
                if (!outs[i].all_ok()) {
                    ok = false;
                    if (first_fail.empty())
                        first_fail = lines[2 * i];
                }
        }
        const auto app = check_appendix_tables(tables_path);
        report << "appendix " << app.matrices_matched << "/"
               << app.matrices_checked << "\n";
        if (!app.ok()) {
            ok = false;
            if (first_fail.empty())
                first_fail = app.mismatches.empty() ? "appendix count"
                                                    : app.mismatches.front();
        }
    } else {
        throw ValidationError("verification preset", "unknown grid " + grid);
    }

    if (grid == "small" || grid == "full") {
        // Base-change exactness for all small norm-one groups.
        for (std::uint64_t q0 : {3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
            if (!is_odd_prime(q0)) continue;
            for (int n : {1, 3}) {
                const FieldSpec s(q0, n);
                if (s.u1_order() > 200) continue;
                std::vector<char> hit(s.unit_order(), 0);
                bool inj = true;
                for (std::uint64_t t = 0; t < s.u1_order(); ++t) {
                    const std::uint64_t a = base_change_tame(t, n, q0);
                    if (hit[a]) inj = false;
                    hit[a] = 1;
                    if (!is_plus_skew_tame(a, n, q0)) inj = false;
                }
                for (std::uint64_t a = 0; a < s.unit_order(); ++a)
                    if (is_plus_skew_tame(a, n, q0) && !hit[a]) inj = false;
                report << "base-change q0=" << q0 << " n=" << n << " "
                       << (inj ? "ok" : "FAIL") << "\n";
                if (!inj) {
                    ok = false;
                    if (first_fail.empty())
                        first_fail = "base-change q0=" + std::to_string(q0);
                }
            }
        }
    }

    if (!report_path.empty()) {
        std::ofstream out(report_path);
        out << report.str();
    }
    if (as_json) {
        std::cout << json{{"ok", ok}, {"first_failure", first_fail}}.dump(2)
                  << "\n";
    } else {
        std::cout << report.str();
        std::cout << (ok ? "verify: all checks passed"
                         : "verify: FAILED at " + first_fail)
                  << "\n";
    }
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"packet and type computations for unramified quasi-split "
                 "unitary groups"};
    app.require_subcommand(1);

    std::string file, lattice = "Lambda", group = "H1", even_ids, gl_json;
    std::string grid = "small", report_path, tables_path = "data/appendix_tables.txt";
    int i0 = -1, jobs = 1;
    bool as_json = false, verify = false, oracle = false, inject_fault = false;

    auto* packet = app.add_subcommand("packet", "assemble the packet of a datum");
    packet->add_option("file", file)->required();
    packet->add_flag("--json", as_json);
    packet->add_flag("--verify", verify, "cross-check amendments with the oracle");

    auto* emb = app.add_subcommand("embeddings", "list the embedding classes");
    emb->add_option("file", file)->required();
    emb->add_flag("--json", as_json);

    auto* filt = app.add_subcommand("filtration", "print a compact-subgroup table");
    filt->add_option("file", file)->required();
    filt->add_option("--lattice", lattice, "Lambda|My|Mz");
    filt->add_option("--group", group, "H1|J1|J");
    filt->add_option("--even-ids", even_ids, "comma-separated ids on the even side");
    filt->add_option("--i0", i0)->default_val(0);
    filt->add_flag("--json", as_json);

    auto* amend = app.add_subcommand("amend", "amending and transfer characters");
    amend->add_option("file", file)->required();
    amend->add_option("--even-ids", even_ids);
    amend->add_option("--i0", i0);
    amend->add_flag("--oracle", oracle, "cross-check with the finite-field oracle");
    amend->add_flag("--json", as_json);

    auto* hecke = app.add_subcommand("hecke", "Hecke exponents and reducibility");
    hecke->add_option("file", file)->required();
    hecke->add_option("--even-ids", even_ids);
    hecke->add_option("--i0", i0)->default_val(0);
    hecke->add_option("--gl", gl_json, "JSON component for the match test");
    hecke->add_flag("--json", as_json);

    auto* ver = app.add_subcommand("verify", "run a verification grid");
    ver->add_option("--grid", grid, "small|appendix|full");
    ver->add_option("--report", report_path);
    ver->add_option("--tables", tables_path);
    ver->add_option("--jobs", jobs);
    ver->add_flag("--json", as_json);
    ver->add_flag("--inject-fault", inject_fault,
                  "negative control: flip the parity rule");

    CLI11_PARSE(app, argc, argv);

    try {
        if (packet->parsed()) return cmd_packet(file, as_json, verify);
        if (emb->parsed()) return cmd_embeddings(file, as_json);
        if (filt->parsed())
            return cmd_filtration(file, lattice, group, even_ids, i0, as_json);
        if (amend->parsed()) return cmd_amend(file, even_ids, i0, oracle, as_json);
        if (hecke->parsed()) return cmd_hecke(file, even_ids, i0, gl_json, as_json);
        if (ver->parsed())
            return cmd_verify(grid, report_path, tables_path, jobs, inject_fault,
                              as_json);
    } catch (const upacket::ValidationError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const upacket::InconsistencyError& e) {
        std::cerr << "internal inconsistency: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
