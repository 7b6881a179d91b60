#include "commands.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "temporeach/ecc.hpp"
#include "temporeach/errors.hpp"
#include "temporeach/reach.hpp"
#include "temporeach/solvers.hpp"
#include "temporeach/testkit.hpp"
#include "temporeach/twdp.hpp"
#include "temporeach/verify.hpp"

namespace temporeach::cli {

namespace {

using json = nlohmann::ordered_json;

// Ordered report: text prints "KEY value" per field, JSON mirrors it with lowercase keys.
class Report {
public:
    void add(const std::string& key, json value) { fields_.emplace_back(key, std::move(value)); }
    void perturb(const Relabel& r) { perturbs_.push_back({r.u, r.v, r.old_time, r.new_time}); }
    void perturbs_here() { fields_.emplace_back("PERTURB", nullptr); }

    void write(std::ostream& out, bool as_json) const {
        if (as_json) {
            json j = json::object();
            for (const auto& [k, v] : fields_) {
                std::string key = lower(k);
                if (k == "PERTURB") j["perturb"] = perturbs_;
                else j[key] = v;
            }
            out << j.dump() << "\n";
            return;
        }
        for (const auto& [k, v] : fields_) {
            if (k == "PERTURB") {
                for (const auto& p : perturbs_)
                    out << "PERTURB " << p[0] << " " << p[1] << " " << p[2] << " " << p[3] << "\n";
                continue;
            }
            out << k;
            if (!v.is_null()) out << " " << (v.is_string() ? v.get<std::string>() : v.dump());
            out << "\n";
        }
    }

private:
    static std::string lower(std::string s) {
        for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        return s;
    }
    std::vector<std::pair<std::string, json>> fields_;
    json perturbs_ = json::array();
};

std::string read_file(const std::string& path) {
    if (path.empty()) throw InvalidInput("missing input file");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// "# key value" comment lines written by `gen` carry default parameters.
std::map<std::string, std::string> header_params(const std::string& text) {
    std::map<std::string, std::string> out;
    std::istringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        std::istringstream ls(line);
        std::string hash, key, value;
        if (ls >> hash >> key >> value && hash == "#") out.emplace(key, value);
    }
    return out;
}

int param(const std::optional<int>& flag, const std::map<std::string, std::string>& hdr, const std::string& name) {
    if (flag) return *flag;
    auto it = hdr.find(name);
    if (it == hdr.end()) throw InvalidInput("missing parameter --" + name);
    try {
        return std::stoi(it->second);
    } catch (const std::exception&) {
        throw InvalidInput("bad header value for " + name);
    }
}

EccVariant variant_of(const RunConfig& cfg, const std::map<std::string, std::string>& hdr) {
    std::string v = cfg.variant.value_or(hdr.count("variant") ? hdr.at("variant") : "shortest");
    auto parsed = parse_variant(v);
    if (!parsed) throw InvalidInput("unknown variant '" + v + "'");
    return *parsed;
}

void emit_certificate(Report& rep, const Perturbation& p) {
    for (const auto& r : p.records)
        if (r.old_time != r.new_time) rep.perturb(r);
    rep.perturbs_here();
}

int report_reach(const RunConfig& cfg, std::ostream& out, const SolveResult& res, int delta, int zeta, int h) {
    Report rep;
    rep.add("ANSWER", res.answer ? "yes" : "no");
    if (res.answer) {
        rep.add("SOURCE", res.source);
        rep.add("REACH", res.reach_count);
        rep.add("DELTA", delta);
        rep.add("ZETA", zeta);
        rep.add("H", h);
        emit_certificate(rep, res.certificate);
    }
    rep.add("STRATEGY", res.strategy);
    rep.write(out, cfg.json);
    return res.answer ? kYes : kNo;
}

int report_ecc(const RunConfig& cfg, std::ostream& out, const SolveResult& res, const EccInstance& inst) {
    Report rep;
    rep.add("ANSWER", res.answer ? "yes" : "no");
    if (res.answer) {
        rep.add("SOURCE", res.source);
        if (res.eccentricity) rep.add("ECC", *res.eccentricity);
        rep.add("DELTA", inst.delta);
        rep.add("ZETA", inst.zeta);
        rep.add("K", inst.k);
        rep.add("VARIANT", variant_name(inst.variant));
        emit_certificate(rep, res.certificate);
    }
    rep.add("STRATEGY", res.strategy);
    rep.write(out, cfg.json);
    return res.answer ? kYes : kNo;
}

int refuse(const RunConfig& cfg, std::ostream& out, std::ostream& err, const Refusal& r) {
    Report rep;
    rep.add("REFUSED", r.reason());
    rep.write(out, cfg.json);
    err << r.what() << "\n";
    return kError;
}

template <class Body>
int guarded(const RunConfig& cfg, std::ostream& out, std::ostream& err, Body body) {
    try {
        return body();
    } catch (const Refusal& r) {
        return refuse(cfg, out, err, r);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kError;
    }
}

struct LoadedGraph {
    TemporalGraph graph;
    std::map<std::string, std::string> hdr;
};

LoadedGraph load_graph(const RunConfig& cfg) {
    std::string text = read_file(cfg.graph_path);
    return {parse_graph_string(text), header_params(text)};
}

TrlpInstance trlp_instance(const RunConfig& cfg) {
    auto [g, hdr] = load_graph(cfg);
    TrlpInstance inst;
    inst.graph = std::move(g);
    inst.delta = param(cfg.delta, hdr, "delta");
    inst.zeta = param(cfg.zeta, hdr, "zeta");
    inst.h = param(cfg.h, hdr, "h");
    inst.validate();
    return inst;
}

EccInstance ecc_instance(const RunConfig& cfg) {
    auto [g, hdr] = load_graph(cfg);
    EccInstance inst;
    inst.graph = std::move(g);
    inst.delta = param(cfg.delta, hdr, "delta");
    inst.zeta = param(cfg.zeta, hdr, "zeta");
    inst.k = param(cfg.k, hdr, "k");
    inst.source = param(cfg.source, hdr, "source");
    inst.variant = variant_of(cfg, hdr);
    inst.validate();
    return inst;
}

void write_output(const RunConfig& cfg, std::ostream& out, const std::string& text) {
    if (cfg.output_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(cfg.output_path, std::ios::binary);
    if (!f) throw InvalidInput("cannot write " + cfg.output_path);
    f << text;
}

}  // namespace

void apply_env_caps(SolverConfig& caps) {
    const char* v = std::getenv("TEMPOREACH_CAP");
    if (!v || !*v) return;
    std::size_t used = 0;
    long long cap = std::stoll(v, &used);
    if (used != std::string(v).size() || cap <= 0) throw std::invalid_argument("TEMPOREACH_CAP must be a positive integer");
    caps.work_cap = cap;
    caps.oracle_cap = cap;
}

int cmd_trlp(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(cfg, out, err, [&] {
        auto strategy = parse_strategy(cfg.strategy);
        if (!strategy) throw InvalidInput("unknown strategy '" + cfg.strategy + "'");
        TrlpInstance inst = trlp_instance(cfg);
        SolveResult res;
        if (*strategy == Strategy::TreewidthDp && !cfg.decomposition_path.empty()) {
            TreeDecomposition d = parse_decomposition_string(read_file(cfg.decomposition_path));
            TwOptions opt;
            opt.state_cap = cfg.caps.state_cap;
            res = solve_trlp_treewidth(inst, d, opt);
        } else {
            res = solve_trlp(inst, cfg.caps, *strategy);
        }
        return report_reach(cfg, out, res, inst.delta, inst.zeta, inst.h);
    });
}

int cmd_trp(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(cfg, out, err, [&] {
        auto [g, hdr] = load_graph(cfg);
        int delta = param(cfg.delta, hdr, "delta");
        int h = param(cfg.h, hdr, "h");
        if (h < 1 || h > g.vertex_count()) throw InvalidInput("h must lie in [1, n]");
        SolveResult res = solve_trp(g, delta, h);
        return report_reach(cfg, out, res, delta, res.certificate.perturbed_count(), h);
    });
}

int cmd_ecc(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(cfg, out, err, [&] {
        EccInstance inst = ecc_instance(cfg);
        return report_ecc(cfg, out, solve_ecc_perturbed(inst, cfg.caps), inst);
    });
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(cfg, out, err, [&] {
        if (cfg.mode == "trlp") {
            TrlpInstance inst = trlp_instance(cfg);
            return report_reach(cfg, out, oracle_trlp(inst, cfg.caps), inst.delta, inst.zeta, inst.h);
        }
        if (cfg.mode == "ecc") {
            EccInstance inst = ecc_instance(cfg);
            return report_ecc(cfg, out, oracle_ecc(inst, cfg.caps), inst);
        }
        throw InvalidInput("oracle mode must be trlp or ecc");
    });
}

int cmd_gen(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(cfg, out, err, [&] {
        std::string text;
        if (cfg.mode == "domset") {
            std::istringstream in(read_file(cfg.graph_path));
            SimpleGraph sg = parse_simple_graph(in);
            if (!cfg.r) throw InvalidInput("missing parameter -r");
            text = emit_instance(domset_to_trlp(sg, *cfg.r));
        } else if (cfg.mode == "sat-tsep" || cfg.mode == "sat-tfaep") {
            CnfFormula f = parse_dimacs_string(read_file(cfg.cnf_path));
            bool tsep = cfg.mode == "sat-tsep";
            int k = cfg.k.value_or(tsep ? 4 : 2);
            int delta = cfg.delta.value_or(1);
            text = emit_instance(tsep ? sat_to_tsep(f, k, delta) : sat_to_tfaep(f, k, delta));
        } else if (cfg.mode == "random") {
            auto profile = parse_profile(cfg.profile);
            if (!profile) throw InvalidInput("unknown profile '" + cfg.profile + "'");
            text = emit_instance(random_instance(cfg.seed, *profile));
        } else {
            throw InvalidInput("gen mode must be domset, sat-tsep, sat-tfaep or random");
        }
        write_output(cfg, out, text);
        return kYes;
    });
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(cfg, out, err, [&] {
        TemporalGraph g = parse_graph_string(read_file(cfg.graph_path));
        // Accepts a perturbation file or a solver report; flags override file fields.
        std::string text = read_file(cfg.perturbation_path);
        Perturbation p;
        std::map<std::string, std::string> fields;
        bool have_delta = false, have_zeta = false;
        auto first = text.find_first_not_of(" \t\r\n");
        if (first != std::string::npos && text[first] == '{') {
            json j;
            try {
                j = json::parse(text);
            } catch (const json::parse_error& e) {
                throw ParseError(0, e.what());
            }
            for (auto& [key, value] : j.items()) {
                if (key == "perturb") {
                    for (const auto& r : value) {
                        if (!r.is_array() || r.size() != 4) throw ParseError(0, "malformed perturb entry");
                        p.records.push_back({r[0].get<int>(), r[1].get<int>(), r[2].get<int>(), r[3].get<int>()});
                    }
                } else {
                    fields[key] = value.is_string() ? value.get<std::string>() : value.dump();
                }
            }
        } else {
            std::istringstream in(text);
            std::string line;
            int lineno = 0;
            while (std::getline(in, line)) {
                ++lineno;
                std::istringstream ls(line);
                std::string key;
                if (!(ls >> key) || key[0] == '#') continue;
                for (auto& c : key) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
                if (key == "p" || key == "perturb") {
                    Relabel r;
                    if (!(ls >> r.u >> r.v >> r.old_time >> r.new_time))
                        throw ParseError(lineno, "malformed perturbation record");
                    p.records.push_back(r);
                } else {
                    std::string value;
                    ls >> value;
                    fields[key] = value;
                }
            }
        }
        auto field_int = [&](const std::optional<int>& flag, const std::string& key) -> std::optional<int> {
            if (flag) return flag;
            auto it = fields.find(key);
            if (it == fields.end()) return std::nullopt;
            try {
                return std::stoi(it->second);
            } catch (const std::exception&) {
                throw InvalidInput("bad value for " + key + ": '" + it->second + "'");
            }
        };
        if (auto d = field_int(cfg.delta, "delta")) {
            p.delta = *d;
            have_delta = true;
        }
        if (auto z = field_int(cfg.zeta, "zeta")) {
            p.zeta = *z;
            have_zeta = true;
        }
        if (!have_delta || !have_zeta) throw InvalidInput("delta and zeta must be given in the file or as flags");
        p.canonicalize();
        auto source = field_int(cfg.source, "source");
        if (!source) throw InvalidInput("missing source");
        auto k = field_int(cfg.k, "k");
        auto h = field_int(cfg.h, "h");

        VerifyReport vr;
        bool ecc_mode = k.has_value() && !h.has_value();
        if (ecc_mode) {
            std::string v = cfg.variant.value_or(fields.count("variant") ? fields.at("variant") : "shortest");
            auto variant = parse_variant(v);
            if (!variant) throw InvalidInput("unknown variant '" + v + "'");
            vr = verify_ecc(g, p, *source, *variant, *k);
        } else {
            vr = verify_reach(g, p, *source, h.value_or(1));
        }
        Report rep;
        rep.add(vr.valid ? "VALID" : "INVALID", vr.valid ? json(nullptr) : json(vr.reason));
        rep.add("MOVED", vr.moved);
        rep.add("REACH", vr.reach);
        if (ecc_mode) rep.add("ECC", vr.eccentricity ? json(*vr.eccentricity) : json("inf"));
        if (cfg.json) {
            json j = {{"valid", vr.valid}, {"reason", vr.reason}, {"moved", vr.moved}, {"reach", vr.reach}};
            if (ecc_mode) j["ecc"] = vr.eccentricity ? json(*vr.eccentricity) : json("inf");
            out << j.dump() << "\n";
        } else {
            rep.write(out, false);
        }
        return vr.valid ? kYes : kNo;
    });
}

int cmd_reach(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(cfg, out, err, [&] {
        auto [g, hdr] = load_graph(cfg);
        int source = param(cfg.source, hdr, "source");
        if (source < 0 || source >= g.vertex_count()) throw InvalidInput("source out of range");
        ForemostTree tree = foremost_tree(g, source);
        if (cfg.json) {
            json arr = json::array();
            for (Vertex v = 0; v < g.vertex_count(); ++v)
                arr.push_back(tree.arrival[v] ? json(*tree.arrival[v]) : json("inf"));
            out << json{{"source", source}, {"reach", tree.reach_count()}, {"arrival", arr}}.dump() << "\n";
            return kYes;
        }
        out << "SOURCE " << source << "\n" << "REACH " << tree.reach_count() << "\n";
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
            out << "ARRIVAL " << v << " ";
            if (tree.arrival[v]) out << *tree.arrival[v];
            else out << "inf";
            out << "\n";
        }
        return kYes;
    });
}

int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.subcommand == "trlp") return cmd_trlp(cfg, out, err);
    if (cfg.subcommand == "trp") return cmd_trp(cfg, out, err);
    if (cfg.subcommand == "ecc") return cmd_ecc(cfg, out, err);
    if (cfg.subcommand == "gen") return cmd_gen(cfg, out, err);
    if (cfg.subcommand == "verify") return cmd_verify(cfg, out, err);
    if (cfg.subcommand == "oracle") return cmd_oracle(cfg, out, err);
    if (cfg.subcommand == "reach") return cmd_reach(cfg, out, err);
    err << "error: unknown subcommand '" << cfg.subcommand << "'\n";
    return kError;
}

}  // namespace temporeach::cli
