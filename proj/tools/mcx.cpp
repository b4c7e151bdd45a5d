#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "mcx/canonical.hpp"
#include "mcx/encode.hpp"
#include "mcx/hopf.hpp"
#include "mcx/lattice.hpp"
#include "mcx/recon.hpp"
#include "mcx/textio.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace mcx;

namespace {

// Exit codes: 0 success, 1 verification failure, 2 input error.
constexpr int exit_verification_failed = 1;

// ---------------------------------------------------------------- rendering

/// Terms print as "+q·k3"; the legend maps each alias back to its hex key in
/// first-appearance order.
struct Legend {
    std::vector<CanonicalKey> keys;
    std::map<CanonicalKey, std::size_t> index;

    std::string name(const CanonicalKey& key) {
        auto [it, inserted] = index.emplace(key, keys.size());
        if (inserted) keys.push_back(key);
        return "k" + std::to_string(it->second + 1);
    }

    void print(std::ostream& os) const {
        if (keys.empty()) return;
        os << "legend:\n";
        for (std::size_t i = 0; i < keys.size(); ++i)
            os << "  k" << (i + 1) << " = " << key_to_hex(keys[i]) << "\n";
    }
};

std::string coeff_text(const Rational& q) {
    std::ostringstream os;
    if (q < 0)
        os << "-" << Rational(-q);
    else
        os << "+" << q;
    return os.str();
}

std::string element_line(const Element& e, Legend& legend) {
    if (e.is_zero()) return "0";
    std::string out;
    for (const auto& [key, q] : e.terms) {
        if (!out.empty()) out += ' ';
        out += coeff_text(q) + "·" + legend.name(key);
    }
    return out;
}

std::string tensor_line(const TensorElement& t, Legend& legend) {
    if (t.is_zero()) return "0";
    std::string out;
    for (const auto& [pair, q] : t.terms) {
        if (!out.empty()) out += ' ';
        // name() mutates the legend; keep the calls sequenced
        const std::string left = legend.name(pair.first);
        const std::string right = legend.name(pair.second);
        out += coeff_text(q) + "·" + left + "(x)" + right;
    }
    return out;
}

json element_json(const Element& e) {
    json terms = json::array();
    for (const auto& [key, q] : e.terms) {
        std::ostringstream qs;
        qs << q;
        terms.push_back({{"coeff", qs.str()}, {"key", key_to_hex(key)}});
    }
    return terms;
}

json tensor_json(const TensorElement& t) {
    json terms = json::array();
    for (const auto& [pair, q] : t.terms) {
        std::ostringstream qs;
        qs << q;
        terms.push_back(
            {{"coeff", qs.str()}, {"left", key_to_hex(pair.first)}, {"right", key_to_hex(pair.second)}});
    }
    return terms;
}

void print_complex(std::ostream& os, const MultiComplex& c, bool json_out) {
    if (json_out) {
        os << emit_json(c) << "\n";
        return;
    }
    os << "# n=" << c.vertex_count() << " faces=" << c.face_count() << " dim=" << dimension(c)
       << " components=" << component_count(c) << "\n";
    os << emit_text(c);
}

// ------------------------------------------------------------------- input

CanonicalKey hex_to_key(const std::string& hex) {
    auto digit = [&](char ch) -> int {
        if (ch >= '0' && ch <= '9') return ch - '0';
        if (ch >= 'a' && ch <= 'f') return ch - 'a' + 10;
        if (ch >= 'A' && ch <= 'F') return ch - 'A' + 10;
        fail(errc::parse_error, "bad hex digit '" + std::string(1, ch) + "' in key " + hex);
    };
    if (hex.size() % 2 != 0) fail(errc::parse_error, "odd-length hex key " + hex);
    CanonicalKey key;
    key.reserve(hex.size() / 2);
    for (std::size_t i = 0; i < hex.size(); i += 2)
        key.push_back(static_cast<char>(digit(hex[i]) * 16 + digit(hex[i + 1])));
    decode_key(key); // malformed keys are input errors, caught here
    return key;
}

struct TokenLine {
    int number = 0;
    std::vector<std::string> tokens;
};

[[noreturn]] void line_fail(const TokenLine& line, const std::string& what) {
    fail(errc::parse_error, "line " + std::to_string(line.number) + ": " + what);
}

std::vector<TokenLine> read_token_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::parse_error, "cannot open " + path);
    std::vector<TokenLine> lines;
    std::string raw;
    for (int number = 1; std::getline(in, raw); ++number) {
        if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::istringstream is(raw);
        TokenLine line{number, {}};
        for (std::string tok; is >> tok;) line.tokens.push_back(tok);
        if (!line.tokens.empty()) lines.push_back(std::move(line));
    }
    return lines;
}

int line_int(const TokenLine& line, const std::string& tok) {
    std::size_t pos = 0;
    try {
        const int value = std::stoi(tok, &pos);
        if (pos == tok.size()) return value;
    } catch (const std::exception&) {
    }
    line_fail(line, "expected an integer, got '" + tok + "'");
}

long long line_ll(const TokenLine& line, const std::string& tok) {
    std::size_t pos = 0;
    try {
        const long long value = std::stoll(tok, &pos);
        if (pos == tok.size()) return value;
    } catch (const std::exception&) {
    }
    line_fail(line, "expected an integer, got '" + tok + "'");
}

/// Line formats, '#' comments allowed:
///   n <int>                       every kind, exactly once
///   edge <a> <b>                  graph, multigraph
///   edge <v1> ... <vk>            hypergraph
///   simplex <v1> ... <vk>         simplicial, colored
///   color <face-id> <count>       colored; face-id is the 1-based index of
///                                 the simplex line it colors
///   simplex <id> : <v1> ... <vk>  delta
///   parent <child-id> <parent-id> delta
MultiComplex encode_from_file(const std::string& kind, const std::string& path,
                              bool allow_singleton_hyperedges) {
    const auto lines = read_token_lines(path);
    int n = -1;
    std::vector<std::pair<int, int>> pair_edges;
    std::vector<std::vector<int>> vec_faces;
    std::vector<DeltaSimplex> simplices;
    std::vector<std::pair<int, int>> parents;
    std::vector<std::pair<TokenLine, std::pair<int, long long>>> color_lines;

    for (const auto& line : lines) {
        const auto& t = line.tokens;
        if (t[0] == "n") {
            if (t.size() != 2) line_fail(line, "usage: n <int>");
            if (n >= 0) line_fail(line, "duplicate 'n' line");
            n = line_int(line, t[1]);
            if (n < 0) line_fail(line, "vertex count must be >= 0");
        } else if (t[0] == "edge" && (kind == "graph" || kind == "multigraph")) {
            if (t.size() != 3) line_fail(line, "usage: edge <a> <b>");
            pair_edges.emplace_back(line_int(line, t[1]), line_int(line, t[2]));
        } else if (t[0] == "edge" && kind == "hypergraph") {
            std::vector<int> verts;
            for (std::size_t i = 1; i < t.size(); ++i) verts.push_back(line_int(line, t[i]));
            vec_faces.push_back(std::move(verts));
        } else if (t[0] == "simplex" && (kind == "simplicial" || kind == "colored")) {
            if (t.size() < 2) line_fail(line, "usage: simplex <v1> ...");
            std::vector<int> verts;
            for (std::size_t i = 1; i < t.size(); ++i) verts.push_back(line_int(line, t[i]));
            vec_faces.push_back(std::move(verts));
        } else if (t[0] == "color" && kind == "colored") {
            if (t.size() != 3) line_fail(line, "usage: color <face-id> <count>");
            color_lines.push_back({line, {line_int(line, t[1]), line_ll(line, t[2])}});
        } else if (t[0] == "simplex" && kind == "delta") {
            if (t.size() < 4 || t[2] != ":") line_fail(line, "usage: simplex <id> : <v1> ...");
            DeltaSimplex s;
            s.id = line_int(line, t[1]);
            for (std::size_t i = 3; i < t.size(); ++i) s.vertices.push_back(line_int(line, t[i]));
            simplices.push_back(std::move(s));
        } else if (t[0] == "parent" && kind == "delta") {
            if (t.size() != 3) line_fail(line, "usage: parent <child-id> <parent-id>");
            parents.emplace_back(line_int(line, t[1]), line_int(line, t[2]));
        } else {
            line_fail(line, "unknown directive '" + t[0] + "' for " + kind + " input");
        }
    }
    if (n < 0) fail(errc::parse_error, path + ": missing 'n' line");

    if (kind == "graph") return from_graph(n, pair_edges);
    if (kind == "multigraph") return from_multigraph(n, pair_edges);
    if (kind == "hypergraph") return from_hypergraph(n, vec_faces, allow_singleton_hyperedges);
    if (kind == "simplicial") return from_simplicial(n, vec_faces);
    if (kind == "delta") return from_delta(n, simplices, parents);

    std::vector<long long> colors(vec_faces.size(), 0);
    std::vector<bool> colored_once(vec_faces.size(), false);
    for (const auto& [line, entry] : color_lines) {
        const auto [id, count] = entry;
        if (id < 1 || static_cast<std::size_t>(id) > vec_faces.size())
            line_fail(line, "color refers to face " + std::to_string(id) + " but only " +
                                std::to_string(vec_faces.size()) + " simplex lines exist");
        if (colored_once[id - 1]) line_fail(line, "face " + std::to_string(id) + " colored twice");
        colored_once[id - 1] = true;
        colors[id - 1] = count;
    }
    return from_colored_simplicial(n, vec_faces, colors);
}

/// Comma-separated non-singleton face ids -> ideal mask bits.
std::uint32_t parse_face_mask(const MultiComplex& c, const std::string& ids) {
    std::uint32_t mask = 0;
    std::istringstream is(ids);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        if (tok.empty()) continue;
        int id = 0;
        std::size_t pos = 0;
        try {
            id = std::stoi(tok, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != tok.size()) fail(errc::parse_error, "bad face id '" + tok + "'");
        if (id <= c.vertex_count() || id > c.face_count())
            fail(errc::unknown_face, "face id " + tok + " is not a non-singleton face");
        mask |= 1u << (id - c.vertex_count() - 1);
    }
    return mask;
}

// ------------------------------------------------------------- subcommands

struct CommonArgs {
    std::string file;
    bool json_out = false;
};

int cmd_validate(const CommonArgs& args) {
    print_complex(std::cout, load_complex(args.file), args.json_out);
    return 0;
}

int cmd_canon(const CommonArgs& args) {
    const auto key = canonical_form(load_complex(args.file));
    if (args.json_out)
        std::cout << json{{"key", key_to_hex(key)}, {"n", key_vertex_count(key)}}.dump(2) << "\n";
    else
        std::cout << key_to_hex(key) << "\n";
    return 0;
}

int cmd_lattice(const CommonArgs& args) {
    const auto c = load_complex(args.file);
    const auto ideals = enumerate_ideals(c);
    if (args.json_out) {
        json rows = json::array();
        for (const auto mask : ideals) {
            json ids = json::array();
            for (int b = 0; b < c.nonsingleton_count(); ++b)
                if (mask & (1u << b)) ids.push_back(c.vertex_count() + 1 + b);
            rows.push_back(std::move(ids));
        }
        std::cout << json{{"count", ideals.size()}, {"ideals", rows}}.dump(2) << "\n";
        return 0;
    }
    std::cout << "# " << ideals.size() << " spanning sub-complexes\n";
    for (std::size_t i = 0; i < ideals.size(); ++i) {
        std::cout << i << ":";
        for (int b = 0; b < c.nonsingleton_count(); ++b)
            if (ideals[i] & (1u << b)) std::cout << ' ' << (c.vertex_count() + 1 + b);
        std::cout << "\n";
    }
    return 0;
}

int cmd_mobius(const CommonArgs& args, const std::string& lo_ids, const std::string& hi_ids,
               bool have_hi) {
    const auto c = load_complex(args.file);
    SpanningLattice lattice(c);
    const std::uint32_t lo = parse_face_mask(c, lo_ids);
    const std::uint32_t hi = have_hi ? parse_face_mask(c, hi_ids) : lattice.full_mask();
    const Integer mu = lattice.mobius(lo, hi);
    if (args.json_out)
        std::cout << json{{"mu", mu.str()}}.dump(2) << "\n";
    else
        std::cout << "mu = " << mu << "\n";
    return 0;
}

int cmd_primitive(const CommonArgs& args) {
    const Element p = primitive_pc(load_complex(args.file));
    if (args.json_out) {
        std::cout << json{{"terms", element_json(p)}}.dump(2) << "\n";
        return 0;
    }
    Legend legend;
    std::cout << "P = " << element_line(p, legend) << "\n";
    legend.print(std::cout);
    return 0;
}

int cmd_coproduct(const CommonArgs& args) {
    const TensorElement d = coproduct_key(canonical_form(load_complex(args.file)));
    if (args.json_out) {
        std::cout << json{{"terms", tensor_json(d)}}.dump(2) << "\n";
        return 0;
    }
    Legend legend;
    std::cout << "Delta = " << tensor_line(d, legend) << "\n";
    legend.print(std::cout);
    return 0;
}

int cmd_antipode(const CommonArgs& args, const std::string& method) {
    const Element a = make_element(load_complex(args.file));
    if (method != "compare") {
        const Element s = method == "axiom"       ? antipode_axiomatic(a)
                          : method == "primitive" ? antipode_primitive(a)
                                                  : antipode_grouped(a);
        if (args.json_out) {
            std::cout << json{{"method", method}, {"terms", element_json(s)}}.dump(2) << "\n";
            return 0;
        }
        Legend legend;
        std::cout << "S = " << element_line(s, legend) << "\n";
        legend.print(std::cout);
        return 0;
    }

    const Element ax = antipode_axiomatic(a);
    const Element pr = antipode_primitive(a);
    const Element gr = antipode_grouped(a);
    const bool agree = ax == pr;
    const Element divergence = ax - gr;
    if (args.json_out) {
        std::cout << json{{"axiom", element_json(ax)},
                          {"primitive", element_json(pr)},
                          {"grouped", element_json(gr)},
                          {"axiom_equals_primitive", agree},
                          {"divergence_axiom_minus_grouped", element_json(divergence)}}
                         .dump(2)
                  << "\n";
        return agree ? 0 : exit_verification_failed;
    }
    Legend legend;
    std::cout << "S_axiom     = " << element_line(ax, legend) << "\n";
    std::cout << "S_primitive = " << element_line(pr, legend) << "\n";
    std::cout << "S_grouped   = " << element_line(gr, legend) << "\n";
    std::cout << "axiom == primitive: " << (agree ? "yes" : "NO") << "\n";
    std::cout << "divergence (axiom - grouped): " << element_line(divergence, legend) << "\n";
    legend.print(std::cout);
    return agree ? 0 : exit_verification_failed;
}

int cmd_multiplicity(const std::string& big_file, const std::string& small_file, bool json_out) {
    const auto c = load_complex(big_file);
    const auto d = load_complex(small_file);
    const long long count = multiplicity(c, d);
    const long long embeddings = embedding_count(c, d);
    const long long aut = automorphism_count(d);
    if (json_out) {
        std::cout << json{{"multiplicity", count}, {"embeddings", embeddings}, {"aut", aut}}.dump(2)
                  << "\n";
        return 0;
    }
    std::cout << "multiplicity = " << count << "\n";
    std::cout << "embeddings = " << embeddings << ", aut = " << aut << "\n";
    return 0;
}

int cmd_basis_to(const CommonArgs& args) {
    const auto coeffs = to_primitive_basis(load_complex(args.file));
    if (args.json_out) {
        json rows = json::array();
        for (const auto& [keys, coeff] : coeffs) {
            json hexes = json::array();
            for (const auto& key : keys) hexes.push_back(key_to_hex(key));
            rows.push_back({{"coeff", coeff}, {"keys", hexes}});
        }
        std::cout << json{{"monomials", rows}}.dump(2) << "\n";
        return 0;
    }
    std::cout << "# [C] in the primitive basis; line format: <coeff> <component key>...\n";
    for (const auto& [keys, coeff] : coeffs) {
        std::cout << coeff;
        for (const auto& key : keys) std::cout << ' ' << key_to_hex(key);
        std::cout << "\n";
    }
    return 0;
}

int cmd_basis_from(const CommonArgs& args) {
    std::map<std::vector<CanonicalKey>, long long> coeffs;
    for (const auto& line : read_token_lines(args.file)) {
        const long long coeff = line_ll(line, line.tokens[0]);
        std::vector<CanonicalKey> keys;
        for (std::size_t i = 1; i < line.tokens.size(); ++i)
            keys.push_back(hex_to_key(line.tokens[i]));
        std::sort(keys.begin(), keys.end());
        coeffs[std::move(keys)] += coeff;
    }
    const Element e = from_primitive_basis(coeffs);
    if (args.json_out) {
        std::cout << json{{"terms", element_json(e)}}.dump(2) << "\n";
        return 0;
    }
    Legend legend;
    std::cout << "value = " << element_line(e, legend) << "\n";
    legend.print(std::cout);
    return 0;
}

// --------------------------------------------------------------- verifiers

std::vector<Element> axiom_corpus(const std::vector<std::string>& files) {
    std::vector<Element> corpus;
    if (!files.empty()) {
        for (const auto& file : files) corpus.push_back(make_element(load_complex(file)));
        return corpus;
    }
    corpus.push_back(make_element(from_graph(1, {})));
    corpus.push_back(make_element(from_graph(2, {{1, 2}})));
    corpus.push_back(make_element(from_graph(3, {{1, 2}, {2, 3}})));
    corpus.push_back(make_element(from_graph(3, {{1, 2}, {1, 3}, {2, 3}})));
    corpus.push_back(make_element(from_multigraph(2, {{1, 1}, {1, 2}, {1, 2}})));
    corpus.push_back(make_element(
        from_simplicial(3, {{1}, {2}, {3}, {1, 2}, {1, 3}, {2, 3}, {1, 2, 3}})));
    return corpus;
}

/// Deterministic random combinations: 1-3 summands, each a rational times a
/// product of 1-2 corpus elements. Fixed seed, so every run agrees.
std::vector<Element> sample_elements(const std::vector<Element>& corpus, int count) {
    std::mt19937 rng(20260816u);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(corpus.size()) - 1);
    std::uniform_int_distribution<int> summands(1, 3);
    std::uniform_int_distribution<int> factors(1, 2);
    std::uniform_int_distribution<int> numerator(-9, 9);
    std::uniform_int_distribution<int> denominator(1, 9);
    std::vector<Element> samples;
    samples.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        Element e;
        const int terms = summands(rng);
        for (int t = 0; t < terms; ++t) {
            int num = numerator(rng);
            if (num == 0) num = 1;
            Element monomial = corpus[static_cast<std::size_t>(pick(rng))];
            const int extra = factors(rng);
            for (int f = 1; f < extra; ++f)
                monomial = monomial * corpus[static_cast<std::size_t>(pick(rng))];
            e = e + Rational(num, denominator(rng)) * monomial;
        }
        samples.push_back(std::move(e));
    }
    return samples;
}

int cmd_verify_axioms(const std::vector<std::string>& files, int count, int jobs, bool json_out) {
    const auto corpus = axiom_corpus(files);
    const auto samples = sample_elements(corpus, count);
    AxiomReport report;
    if (jobs <= 1) {
        report = verify_hopf_axioms(samples);
    } else {
        // Chunked batches; per-pair checks stay inside one chunk, and chunk
        // order makes the merged report deterministic.
        const int chunk = std::max(1, static_cast<int>(samples.size()) / jobs);
        std::vector<std::vector<Element>> batches;
        for (std::size_t at = 0; at < samples.size(); at += static_cast<std::size_t>(chunk))
            batches.emplace_back(samples.begin() + static_cast<std::ptrdiff_t>(at),
                                 samples.begin() +
                                     static_cast<std::ptrdiff_t>(
                                         std::min(samples.size(), at + static_cast<std::size_t>(chunk))));
        std::vector<AxiomReport> partial(batches.size());
#ifdef MCX_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
#endif
        for (std::size_t b = 0; b < batches.size(); ++b) partial[b] = verify_hopf_axioms(batches[b]);
        for (const auto& part : partial) {
            report.elements_checked += part.elements_checked;
            report.failures.insert(report.failures.end(), part.failures.begin(), part.failures.end());
        }
    }
    if (json_out) {
        std::cout << json{{"elements_checked", report.elements_checked},
                          {"failures", report.failures}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << "checked " << report.elements_checked << " elements\n";
        for (const auto& failure : report.failures) std::cout << "FAIL: " << failure << "\n";
        std::cout << (report.ok() ? "all axioms hold\n" : "axiom failures found\n");
    }
    return report.ok() ? 0 : exit_verification_failed;
}

Element element_from_json(const json& rows) {
    Element e;
    for (const auto& row : rows)
        e.add(hex_to_key(row.at(0).get<std::string>()),
              Rational(row.at(1).get<std::string>()));
    return e;
}

int cmd_verify_examples(const std::string& dir, bool json_out) {
    std::vector<fs::path> expected_files;
    if (!fs::is_directory(dir)) fail(errc::parse_error, dir + " is not a directory");
    for (const auto& entry : fs::directory_iterator(dir)) {
        const auto name = entry.path().filename().string();
        if (name.size() > 14 && name.substr(name.size() - 14) == ".expected.json")
            expected_files.push_back(entry.path());
    }
    std::sort(expected_files.begin(), expected_files.end());
    if (expected_files.empty()) fail(errc::parse_error, dir + " holds no *.expected.json files");

    int checks = 0, failures = 0;
    json results = json::array();
    auto record = [&](const std::string& name, const std::string& what, bool ok,
                      const std::string& detail) {
        ++checks;
        if (!ok) ++failures;
        if (json_out)
            results.push_back({{"example", name}, {"check", what}, {"ok", ok}, {"detail", detail}});
        else if (ok)
            std::cout << name << ": " << what << ": ok\n";
        else
            std::cout << name << ": " << what << ": FAIL " << detail << "\n";
    };

    for (const auto& path : expected_files) {
        const std::string base = path.string().substr(0, path.string().size() - 14);
        const std::string name = fs::path(base).filename().string();
        std::ifstream in(path);
        json expected;
        in >> expected;
        const std::string input = fs::exists(base + ".mcx") ? base + ".mcx" : base + ".mcx.json";
        const auto c = load_complex(input);

        if (expected.contains("canon"))
            record(name, "canon",
                   key_to_hex(canonical_form(c)) == expected["canon"].get<std::string>(),
                   "canonical key changed");
        if (expected.contains("face_count"))
            record(name, "face_count", c.face_count() == expected["face_count"].get<int>(),
                   "got " + std::to_string(c.face_count()));
        if (expected.contains("dimension"))
            record(name, "dimension", dimension(c) == expected["dimension"].get<int>(),
                   "got " + std::to_string(dimension(c)));
        if (expected.contains("components"))
            record(name, "components", component_count(c) == expected["components"].get<int>(),
                   "got " + std::to_string(component_count(c)));
        if (expected.contains("lattice_size")) {
            const auto ideals = enumerate_ideals(c);
            record(name, "lattice_size",
                   ideals.size() == expected["lattice_size"].get<std::size_t>(),
                   "got " + std::to_string(ideals.size()));
        }
        if (expected.contains("mobius_empty_full")) {
            SpanningLattice lattice(c);
            const Integer mu = lattice.mobius(0, lattice.full_mask());
            record(name, "mobius_empty_full",
                   mu.str() == expected["mobius_empty_full"].get<std::string>(), "got " + mu.str());
        }
        if (expected.contains("primitive"))
            record(name, "primitive", primitive_pc(c) == element_from_json(expected["primitive"]),
                   "element differs");
        if (expected.contains("pc_dim1_matches_primitive"))
            record(name, "pc_dim1_matches_primitive",
                   (pc_dim1(c) == primitive_pc(c)) ==
                       expected["pc_dim1_matches_primitive"].get<bool>(),
                   "mismatch");
        if (expected.contains("primitive_is_primitive"))
            record(name, "primitive_is_primitive",
                   is_primitive(primitive_pc(c)) == expected["primitive_is_primitive"].get<bool>(),
                   "mismatch");
        if (expected.contains("coproduct")) {
            TensorElement want;
            for (const auto& row : expected["coproduct"])
                want.add(hex_to_key(row.at(0).get<std::string>()),
                         hex_to_key(row.at(1).get<std::string>()),
                         Rational(row.at(2).get<std::string>()));
            record(name, "coproduct", coproduct_key(canonical_form(c)) == want, "tensor differs");
        }
        if (expected.contains("basis")) {
            std::map<std::vector<CanonicalKey>, long long> want;
            for (const auto& row : expected["basis"]) {
                std::vector<CanonicalKey> keys;
                for (const auto& hex : row.at(0)) keys.push_back(hex_to_key(hex.get<std::string>()));
                want[std::move(keys)] = row.at(1).get<long long>();
            }
            record(name, "basis", to_primitive_basis(c) == want, "coordinates differ");
        }
        if (expected.contains("antipode_axiom_equals_primitive")) {
            const Element a = make_element(c);
            record(name, "antipode_axiom_equals_primitive",
                   (antipode_axiomatic(a) == antipode_primitive(a)) ==
                       expected["antipode_axiom_equals_primitive"].get<bool>(),
                   "mismatch");
        }
        if (expected.contains("antipode_divergence")) {
            const Element a = make_element(c);
            record(name, "antipode_divergence",
                   antipode_axiomatic(a) - antipode_grouped(a) ==
                       element_from_json(expected["antipode_divergence"]),
                   "divergence differs");
        }
    }

    if (json_out)
        std::cout << json{{"checks", checks}, {"failures", failures}, {"results", results}}.dump(2)
                  << "\n";
    else
        std::cout << checks << " checks, " << failures << " failures\n";
    return failures == 0 ? 0 : exit_verification_failed;
}

int cmd_recon_scan(int n, const std::string& deck_name, int jobs, bool json_out) {
    DeckKind kind = DeckKind::vertex_one_deleted;
    if (deck_name == "vertex")
        kind = DeckKind::vertex_one_deleted;
    else if (deck_name == "vertex-full")
        kind = DeckKind::vertex_full;
    else if (deck_name == "edge")
        kind = DeckKind::edge;
    else if (deck_name == "edge-full")
        kind = DeckKind::edge_full;
    else
        fail(errc::parse_error, "unknown deck kind " + deck_name);

    const auto report = scan_counterexamples(n, kind, jobs);
    if (json_out) {
        json histogram = json::object();
        for (const auto& [size, count] : report.class_size_histogram)
            histogram[std::to_string(size)] = count;
        json pairs = json::array();
        for (const auto& [a, b] : report.pairs)
            pairs.push_back({{"a", key_to_hex(a)},
                             {"b", key_to_hex(b)},
                             {"a_text", emit_text(decode_key(a))},
                             {"b_text", emit_text(decode_key(b))}});
        std::cout << json{{"n", report.n},
                          {"deck", deck_kind_name(report.kind)},
                          {"graphs", report.graph_count},
                          {"classes", report.class_count},
                          {"class_size_histogram", histogram},
                          {"pairs", pairs},
                          {"disconnected_unique", report.disconnected_unique}}
                         .dump(2)
                  << "\n";
        return 0;
    }
    std::cout << "scan n=" << report.n << " deck=" << deck_kind_name(report.kind) << "\n";
    std::cout << "graphs: " << report.graph_count << "\n";
    std::cout << "deck classes: " << report.class_count << "\n";
    for (const auto& [size, count] : report.class_size_histogram)
        std::cout << "classes of size " << size << ": " << count << "\n";
    std::cout << "counterexample pairs: " << report.pairs.size() << "\n";
    std::cout << "disconnected deck-unique: " << (report.disconnected_unique ? "yes" : "no") << "\n";
    for (std::size_t i = 0; i < report.pairs.size(); ++i) {
        std::cout << "# pair " << (i + 1) << ", first\n"
                  << emit_text(decode_key(report.pairs[i].first));
        std::cout << "# pair " << (i + 1) << ", second\n"
                  << emit_text(decode_key(report.pairs[i].second));
    }
    return 0;
}

void apply_env_limits() {
    if (const char* env = std::getenv("MCX_MAX_FACES")) {
        const int value = std::atoi(env);
        if (value >= 1 && value <= 32) limits().max_faces = value;
    }
}

} // namespace

int main(int argc, char** argv) {
    apply_env_limits();
    CLI::App app{"multi-complex Hopf algebra toolkit"};
    app.require_subcommand(1);
    int rc = 0;

    auto add_common = [](CLI::App* cmd, CommonArgs& args) {
        cmd->add_option("file", args.file, "complex file (.mcx or .mcx.json)")
            ->required()
            ->check(CLI::ExistingFile);
        cmd->add_flag("--json", args.json_out, "JSON output");
    };

    CommonArgs validate_args;
    add_common(app.add_subcommand("validate", "check the axioms and echo the normal form"),
               validate_args);
    app.get_subcommand("validate")->callback([&] { rc = cmd_validate(validate_args); });

    CommonArgs canon_args;
    add_common(app.add_subcommand("canon", "print the canonical key"), canon_args);
    app.get_subcommand("canon")->callback([&] { rc = cmd_canon(canon_args); });

    auto* encode = app.add_subcommand("encode", "encode a classical object");
    struct {
        std::string kind;
        CommonArgs args;
        bool allow_singleton_hyperedges = false;
    } encode_opts;
    encode->add_option("kind", encode_opts.kind, "input kind")
        ->required()
        ->check(CLI::IsMember({"graph", "multigraph", "hypergraph", "simplicial", "delta", "colored"}));
    encode->add_option("file", encode_opts.args.file, "edge/simplex list")
        ->required()
        ->check(CLI::ExistingFile);
    encode->add_flag("--json", encode_opts.args.json_out, "JSON output");
    encode->add_flag("--allow-singleton-hyperedges", encode_opts.allow_singleton_hyperedges,
                     "encode a {a} hyperedge as the loop {a,a}");
    encode->callback([&] {
        print_complex(std::cout,
                      encode_from_file(encode_opts.kind, encode_opts.args.file,
                                       encode_opts.allow_singleton_hyperedges),
                      encode_opts.args.json_out);
    });

    CommonArgs lattice_args;
    add_common(app.add_subcommand("lattice", "list the spanning sub-complex lattice"), lattice_args);
    app.get_subcommand("lattice")->callback([&] { rc = cmd_lattice(lattice_args); });

    CommonArgs mobius_args;
    std::string mobius_lo, mobius_hi;
    auto* mobius = app.add_subcommand("mobius", "Moebius function on the spanning lattice");
    add_common(mobius, mobius_args);
    mobius->add_option("--lo", mobius_lo, "lower ideal as comma-separated face ids (default empty)");
    auto* hi_opt =
        mobius->add_option("--hi", mobius_hi, "upper ideal as comma-separated face ids (default full)");
    mobius->callback(
        [&] { rc = cmd_mobius(mobius_args, mobius_lo, mobius_hi, hi_opt->count() > 0); });

    CommonArgs primitive_args;
    add_common(app.add_subcommand("primitive", "print the primitive element P_C"), primitive_args);
    app.get_subcommand("primitive")->callback([&] { rc = cmd_primitive(primitive_args); });

    auto* basis = app.add_subcommand("basis", "primitive-basis changes");
    basis->require_subcommand(1);
    CommonArgs basis_to_args;
    add_common(basis->add_subcommand("to", "coordinates of [C] in the primitive basis"),
               basis_to_args);
    basis->get_subcommand("to")->callback([&] { rc = cmd_basis_to(basis_to_args); });
    CommonArgs basis_from_args;
    add_common(basis->add_subcommand("from", "expand primitive-basis coordinates; line format: "
                                             "<coeff> <component key>..."),
               basis_from_args);
    basis->get_subcommand("from")->callback([&] { rc = cmd_basis_from(basis_from_args); });

    CommonArgs coproduct_args;
    add_common(app.add_subcommand("coproduct", "print Delta[C]"), coproduct_args);
    app.get_subcommand("coproduct")->callback([&] { rc = cmd_coproduct(coproduct_args); });

    CommonArgs antipode_args;
    std::string antipode_method = "axiom";
    auto* antipode = app.add_subcommand("antipode", "print S[C]");
    add_common(antipode, antipode_args);
    antipode->add_option("--method", antipode_method, "axiom|primitive|grouped|compare")
        ->check(CLI::IsMember({"axiom", "primitive", "grouped", "compare"}));
    antipode->callback([&] { rc = cmd_antipode(antipode_args, antipode_method); });

    auto* mult = app.add_subcommand("multiplicity", "count [C:D] with cross-checks");
    struct {
        std::string big, small;
        bool json_out = false;
    } mult_opts;
    mult->add_option("C", mult_opts.big, "host complex")->required()->check(CLI::ExistingFile);
    mult->add_option("D", mult_opts.small, "pattern complex")->required()->check(CLI::ExistingFile);
    mult->add_flag("--json", mult_opts.json_out, "JSON output");
    mult->callback([&] { rc = cmd_multiplicity(mult_opts.big, mult_opts.small, mult_opts.json_out); });

    auto* verify = app.add_subcommand("verify", "verification batteries");
    verify->require_subcommand(1);
    struct {
        std::vector<std::string> files;
        int count = 200;
        int jobs = 1;
        bool json_out = false;
    } axioms_opts;
    auto* axioms = verify->add_subcommand("axioms", "Hopf axioms on random elements");
    axioms->add_option("files", axioms_opts.files, "corpus complexes (default: built-in set)")
        ->check(CLI::ExistingFile);
    axioms->add_option("--count", axioms_opts.count, "sample count")->check(CLI::PositiveNumber);
    axioms->add_option("--jobs", axioms_opts.jobs, "verification batches")->check(CLI::PositiveNumber);
    axioms->add_flag("--json", axioms_opts.json_out, "JSON output");
    axioms->callback([&] {
        rc = cmd_verify_axioms(axioms_opts.files, axioms_opts.count, axioms_opts.jobs,
                               axioms_opts.json_out);
    });
    struct {
        std::string dir = "corpus";
        bool json_out = false;
    } examples_opts;
    auto* examples = verify->add_subcommand("examples", "golden examples from the corpus");
    examples->add_option("--corpus", examples_opts.dir, "corpus directory");
    examples->add_flag("--json", examples_opts.json_out, "JSON output");
    examples->callback([&] { rc = cmd_verify_examples(examples_opts.dir, examples_opts.json_out); });

    auto* recon = app.add_subcommand("recon", "reconstruction experiments");
    recon->require_subcommand(1);
    struct {
        int n = 0;
        std::string deck = "vertex";
        int jobs = 1;
        bool json_out = false;
    } scan_opts;
    auto* scan = recon->add_subcommand("scan", "exhaustive deck-collision scan");
    scan->add_option("--n", scan_opts.n, "vertex count")->required();
    scan->add_option("--deck", scan_opts.deck, "vertex|vertex-full|edge|edge-full")
        ->check(CLI::IsMember({"vertex", "vertex-full", "edge", "edge-full"}));
    scan->add_option("--jobs", scan_opts.jobs, "worker threads")->check(CLI::PositiveNumber);
    scan->add_flag("--json", scan_opts.json_out, "JSON output");
    scan->callback(
        [&] { rc = cmd_recon_scan(scan_opts.n, scan_opts.deck, scan_opts.jobs, scan_opts.json_out); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
