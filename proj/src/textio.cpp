#include "mcx/textio.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

namespace mcx {

namespace {

struct RawDoc {
    int n = -1;
    std::vector<std::pair<long long, Face>> faces; // (file id, content)
    std::vector<std::pair<long long, long long>> order;

    MultiComplex build() const {
        if (n < 0) fail(errc::parse_error, "missing vertex count");
        std::map<long long, int> index; // file id -> index into the validate face list
        std::vector<Face> all;
        all.reserve(n + faces.size());
        for (int k = 1; k <= n; ++k) all.push_back(Face{k});
        for (const auto& [id, face] : faces) {
            if (!index.emplace(id, static_cast<int>(all.size())).second)
                fail(errc::parse_error, "face id " + std::to_string(id) + " repeated");
            all.push_back(face);
        }
        std::vector<std::pair<int, int>> pairs;
        pairs.reserve(order.size());
        for (const auto& [lo, hi] : order) {
            const auto a = index.find(lo);
            const auto b = index.find(hi);
            if (a == index.end() || b == index.end())
                fail(errc::unknown_face, "order pair references undeclared face id " +
                                             std::to_string(a == index.end() ? lo : hi));
            pairs.emplace_back(a->second, b->second);
        }
        return MultiComplex::validate(n, std::move(all), pairs);
    }
};

// Strict order pairs among non-singletons with nothing in between.
std::vector<std::pair<int, int>> reduced_pairs(const MultiComplex& c) {
    const int n = c.vertex_count();
    std::vector<std::pair<int, int>> out;
    for (int j = 0; j < c.nonsingleton_count(); ++j) {
        const std::uint32_t below = c.nonsingleton_down(j);
        std::uint32_t rest = below;
        while (rest) {
            const int i = std::countr_zero(rest);
            rest &= rest - 1;
            bool covered = false;
            std::uint32_t mids = below & ~(1u << i);
            while (mids && !covered) {
                const int k = std::countr_zero(mids);
                mids &= mids - 1;
                covered = (c.nonsingleton_down(k) >> i & 1) != 0;
            }
            if (!covered) out.emplace_back(n + 1 + i, n + 1 + j);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

MultiComplex parse_text(const std::string& text) {
    RawDoc doc;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool saw_n = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word)) continue;
        const std::string where = " (line " + std::to_string(lineno) + ")";
        if (word == "n") {
            if (saw_n) fail(errc::parse_error, "repeated n line" + where);
            if (!(ls >> doc.n)) fail(errc::parse_error, "expected integer after n" + where);
            saw_n = true;
        } else if (word == "face") {
            long long id;
            std::string colon;
            if (!(ls >> id >> colon) || colon != ":")
                fail(errc::parse_error, "expected 'face <id> : labels'" + where);
            Face f;
            int v;
            while (ls >> v) f.labels.push_back(v);
            if (!ls.eof()) fail(errc::parse_error, "non-integer label" + where);
            f.normalize();
            doc.faces.emplace_back(id, std::move(f));
        } else if (word == "rel") {
            long long lo, hi;
            std::string lt;
            if (!(ls >> lo >> lt >> hi) || lt != "<")
                fail(errc::parse_error, "expected 'rel <id> < <id>'" + where);
            doc.order.emplace_back(lo, hi);
        } else {
            fail(errc::parse_error, "unknown directive '" + word + "'" + where);
        }
        if (std::string extra; ls >> extra)
            fail(errc::parse_error, "trailing content '" + extra + "'" + where);
    }
    return doc.build();
}

std::string emit_text(const MultiComplex& c) {
    std::ostringstream out;
    out << "n " << c.vertex_count() << "\n";
    for (int i = 0; i < c.nonsingleton_count(); ++i) {
        out << "face " << c.vertex_count() + 1 + i << " :";
        for (int v : c.nonsingleton(i).labels) out << " " << v;
        out << "\n";
    }
    for (const auto& [lo, hi] : reduced_pairs(c)) out << "rel " << lo << " < " << hi << "\n";
    return out.str();
}

MultiComplex parse_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(errc::parse_error, e.what());
    }
    try {
        RawDoc doc;
        doc.n = j.at("n").get<int>();
        if (j.contains("faces"))
            for (const auto& jf : j.at("faces")) {
                Face f(jf.at("multiset").get<std::vector<int>>());
                doc.faces.emplace_back(jf.at("id").get<long long>(), std::move(f));
            }
        if (j.contains("order"))
            for (const auto& jp : j.at("order")) {
                if (!jp.is_array() || jp.size() != 2)
                    fail(errc::parse_error, "order entries must be [lo, hi] pairs");
                doc.order.emplace_back(jp[0].get<long long>(), jp[1].get<long long>());
            }
        return doc.build();
    } catch (const nlohmann::json::exception& e) {
        fail(errc::parse_error, e.what());
    }
}

std::string emit_json(const MultiComplex& c) {
    nlohmann::json j;
    j["n"] = c.vertex_count();
    j["faces"] = nlohmann::json::array();
    for (int i = 0; i < c.nonsingleton_count(); ++i)
        j["faces"].push_back({{"id", c.vertex_count() + 1 + i},
                              {"multiset", c.nonsingleton(i).labels}});
    j["order"] = nlohmann::json::array();
    for (const auto& [lo, hi] : reduced_pairs(c)) j["order"].push_back({lo, hi});
    return j.dump(2) + "\n";
}

MultiComplex load_complex(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(errc::parse_error, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") return parse_json(buf.str());
    return parse_text(buf.str());
}

} // namespace mcx
