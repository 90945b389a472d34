#include "motsteen/margolis.hpp"

#include "motsteen/parse.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace motsteen {

namespace {

using nlohmann::json;

Bidegree q_degree(const Ring& ring, int t) { return tau_degree(ring.p, t); }

// The lattice spanned by coefficient bidegrees, kept in Hermite form
// a = (a.d, a.w) with a.d >= 0 and c = (0, c) with c >= 0.
class Lattice {
public:
    void insert(Bidegree v)
    {
        while (v.d != 0) {
            if (a_.d == 0) {
                std::swap(a_, v);
                continue;
            }
            int q = v.d / a_.d;
            v = v - q * a_;
            if (v.d != 0)
                std::swap(a_, v);
        }
        c_ = std::gcd(c_, std::abs(v.w));
        if (a_.d < 0)
            a_ = -1 * a_;
        normalize();
    }

    // Canonical representative of the coset of v.
    Bidegree reduce(Bidegree v) const
    {
        if (a_.d != 0) {
            int q = v.d / a_.d;
            if (v.d - q * a_.d < 0)
                --q;
            v = v - q * a_;
        }
        if (c_ != 0) {
            int r = v.w % c_;
            v.w = r < 0 ? r + c_ : r;
        }
        return v;
    }

private:
    void normalize()
    {
        if (c_ != 0) {
            int r = a_.w % c_;
            a_.w = r < 0 ? r + c_ : r;
        }
    }

    Bidegree a_{0, 0};
    int c_ = 0;
};

std::string element_name(const ModulePresentation& m, std::size_t i) { return "'" + m.basis[i].name + "'"; }

}  // namespace

void validate_module(const ModulePresentation& m)
{
    const std::size_t n = m.basis.size();
    for (const auto& [t, mat] : m.actions) {
        if (t < 0)
            throw ModuleError("action index must be non-negative, got " + std::to_string(t));
        if (mat.rows() != n || mat.cols() != n)
            throw ModuleError("Q" + std::to_string(t) + " matrix must be " + std::to_string(n) + "x" +
                              std::to_string(n));
        const Bidegree qd = q_degree(m.ring, t);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const Coeff& c = mat.at(i, j);
                if (c.is_zero())
                    continue;
                auto cd = c.bidegree();
                if (!cd || m.basis[i].bidegree + *cd != m.basis[j].bidegree + qd)
                    throw ModuleError("inhomogeneous entry " + to_string(c) + " for " + element_name(m, i) +
                                      " in Q" + std::to_string(t) + " " + element_name(m, j) + ": expected bidegree " +
                                      to_string(m.basis[j].bidegree + qd) + ", got " +
                                      (cd ? to_string(m.basis[i].bidegree + *cd) : std::string("mixed terms")));
            }
        }
        const CoeffMatrix square = mat * mat;
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i)
                if (!square.at(i, j).is_zero())
                    throw ModuleError("Q" + std::to_string(t) + "^2 of basis element " + element_name(m, j) +
                                      " is nonzero (coefficient " + to_string(square.at(i, j)) + " on " +
                                      element_name(m, i) + ")");
    }
}

ModulePresentation load_module_text(std::string_view json_text)
{
    json doc;
    try {
        doc = json::parse(json_text);
    }
    catch (const json::parse_error& e) {
        throw ModuleError(std::string("module JSON: ") + e.what());
    }
    try {
        if (!doc.is_object())
            throw ModuleError("module JSON must be an object");
        auto p = doc.at("prime").get<std::uint32_t>();
        BaseMode mode = BaseMode::Generic;
        if (doc.contains("mode")) {
            auto parsed = parse_base_mode(doc.at("mode").get<std::string>());
            if (!parsed)
                throw ModuleError("unknown mode " + doc.at("mode").dump());
            mode = *parsed;
        }
        ModulePresentation m{Ring::make(p, mode), {}, {}};
        for (const auto& b : doc.at("basis")) {
            ModuleBasisElement e;
            e.name = b.at("name").get<std::string>();
            const auto& bd = b.at("bidegree");
            if (!bd.is_array() || bd.size() != 2)
                throw ModuleError("bidegree of '" + e.name + "' must be [d, w]");
            e.bidegree = {bd[0].get<int>(), bd[1].get<int>()};
            if (b.contains("boundary"))
                e.boundary = b.at("boundary").get<bool>();
            m.basis.push_back(std::move(e));
        }
        const std::size_t n = m.basis.size();
        for (const auto& [key, rows] : doc.at("actions").items()) {
            int t = 0;
            try {
                std::size_t used = 0;
                t = std::stoi(key, &used);
                if (used != key.size())
                    throw std::invalid_argument(key);
            }
            catch (const std::logic_error&) {
                throw ModuleError("action key '" + key + "' is not an integer");
            }
            if (!rows.is_array() || rows.size() != n)
                throw ModuleError("Q" + key + " must have " + std::to_string(n) + " rows");
            CoeffMatrix mat(m.ring, n, n);
            for (std::size_t i = 0; i < n; ++i) {
                if (!rows[i].is_array() || rows[i].size() != n)
                    throw ModuleError("row " + std::to_string(i) + " of Q" + key + " must have " + std::to_string(n) +
                                      " entries");
                for (std::size_t j = 0; j < n; ++j) {
                    const auto& cell = rows[i][j];
                    std::string text = cell.is_string() ? cell.get<std::string>() : cell.dump();
                    try {
                        mat.at(i, j) = parse_coeff(text, m.ring);
                    }
                    catch (const ParseError& e) {
                        throw ModuleError("entry (" + std::to_string(i) + "," + std::to_string(j) + ") of Q" + key +
                                          ": " + e.what());
                    }
                }
            }
            m.actions.emplace(t, std::move(mat));
        }
        validate_module(m);
        return m;
    }
    catch (const json::exception& e) {
        throw ModuleError(std::string("module JSON schema: ") + e.what());
    }
    catch (const ContractError& e) {
        throw ModuleError(e.what());
    }
}

ModulePresentation load_module_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ModuleError("cannot open module file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_module_text(buf.str());
}

std::string module_to_json(const ModulePresentation& m)
{
    json doc;
    doc["prime"] = m.ring.p;
    doc["mode"] = std::string(to_string(m.ring.mode));
    doc["basis"] = json::array();
    for (const auto& b : m.basis)
        doc["basis"].push_back({{"name", b.name}, {"bidegree", {b.bidegree.d, b.bidegree.w}}, {"boundary", b.boundary}});
    doc["actions"] = json::object();
    for (const auto& [t, mat] : m.actions) {
        json rows = json::array();
        for (std::size_t i = 0; i < mat.rows(); ++i) {
            json row = json::array();
            for (std::size_t j = 0; j < mat.cols(); ++j)
                row.push_back(to_string(mat.at(i, j)));
            rows.push_back(row);
        }
        doc["actions"][std::to_string(t)] = rows;
    }
    return doc.dump(2);
}

ModulePresentation direct_sum(const ModulePresentation& a, const ModulePresentation& b)
{
    require_same_ring(a.ring, b.ring, "direct_sum");
    ModulePresentation out{a.ring, a.basis, {}};
    out.basis.insert(out.basis.end(), b.basis.begin(), b.basis.end());
    const std::size_t na = a.basis.size(), n = out.basis.size();
    std::vector<int> keys;
    for (const auto& [t, mat] : a.actions)
        keys.push_back(t);
    for (const auto& [t, mat] : b.actions)
        keys.push_back(t);
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    for (int t : keys) {
        CoeffMatrix mat(a.ring, n, n);
        if (auto it = a.actions.find(t); it != a.actions.end())
            for (std::size_t i = 0; i < na; ++i)
                for (std::size_t j = 0; j < na; ++j)
                    mat.at(i, j) = it->second.at(i, j);
        if (auto it = b.actions.find(t); it != b.actions.end())
            for (std::size_t i = 0; i < n - na; ++i)
                for (std::size_t j = 0; j < n - na; ++j)
                    mat.at(na + i, na + j) = it->second.at(i, j);
        out.actions.emplace(t, std::move(mat));
    }
    return out;
}

std::size_t HomologyReport::total_homology(bool include_boundary) const
{
    std::size_t total = 0;
    for (const auto& e : entries)
        if (include_boundary || !e.boundary)
            total += e.homology;
    return total;
}

HomologyReport margolis_homology(const ModulePresentation& m, int t,
                                 std::optional<std::pair<std::uint32_t, std::uint32_t>> specialization)
{
    auto it = m.actions.find(t);
    if (it == m.actions.end())
        throw ModuleError("module has no Q" + std::to_string(t) + " action");
    const CoeffMatrix& d = it->second;
    const std::size_t n = m.basis.size();
    const Bidegree qd = q_degree(m.ring, t);

    Lattice lattice;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!d.at(i, j).is_zero())
                lattice.insert(*d.at(i, j).bidegree());

    // Cosets of basis bidegrees; column j maps into the coset of |e_j| + |Q_t|.
    std::map<Bidegree, std::vector<std::size_t>> members;
    for (std::size_t i = 0; i < n; ++i)
        members[lattice.reduce(m.basis[i].bidegree)].push_back(i);

    auto rank = [&](const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) -> std::size_t {
        if (rows.empty() || cols.empty())
            return 0;
        CoeffMatrix sub = d.select(rows, cols);
        if (specialization)
            return rank_specialized(sub, specialization->first, specialization->second);
        return rank_fraction_free(sub);
    };

    HomologyReport report;
    report.t = t;
    report.specialization = specialization;
    for (const auto& [coset, xs] : members) {
        HomologyEntry e;
        e.dimension = xs.size();
        for (std::size_t i : xs) {
            e.bidegrees.push_back(m.basis[i].bidegree);
            e.boundary = e.boundary || m.basis[i].boundary;
        }
        std::sort(e.bidegrees.begin(), e.bidegrees.end());
        e.bidegrees.erase(std::unique(e.bidegrees.begin(), e.bidegrees.end()), e.bidegrees.end());
        e.bidegree = e.bidegrees.front();

        // Outgoing: columns xs land in the coset of |x| + |Q_t|.
        auto out_it = members.find(lattice.reduce(m.basis[xs.front()].bidegree + qd));
        std::size_t out_rank = out_it == members.end() ? 0 : rank(out_it->second, xs);
        e.kernel = xs.size() - out_rank;
        // Incoming: columns whose targets lie in this coset.
        std::vector<std::size_t> sources;
        for (std::size_t j = 0; j < n; ++j)
            if (lattice.reduce(m.basis[j].bidegree + qd) == coset)
                sources.push_back(j);
        e.image = rank(xs, sources);
        e.homology = e.kernel - e.image;
        report.entries.push_back(std::move(e));
    }
    return report;
}

ModulePresentation export_bmu(const BmuComodule& bmu, int t)
{
    const Ring& ring = bmu.ring();
    const std::uint32_t n = bmu.truncation();
    const std::uint64_t shift = ipow(ring.p, unsigned(t));
    // A wider truncation so that Q_t of every basis element is computed exactly.
    BmuComodule wide(bmu.algebra(), std::uint32_t(n + shift + 1));

    ModulePresentation m{ring, {}, {}};
    std::vector<BmuMonomial> monos;
    for (std::uint32_t k = 0; k <= n; ++k)
        for (std::uint8_t e = 0; e <= 1; ++e) {
            BmuMonomial mono{e, k};
            monos.push_back(mono);
            m.basis.push_back({format_bmu_monomial(mono), mono.bidegree(), false});
        }
    const OpElement q = bmu.algebra().milnor_primitive(t);
    CoeffMatrix mat(ring, monos.size(), monos.size());
    for (std::size_t j = 0; j < monos.size(); ++j) {
        const BmuElement image = wide.act(q, wide.element(monos[j]));
        for (const auto& [key, c] : image.terms()) {
            if (key.second.v > n) {
                m.basis[j].boundary = true;
                continue;
            }
            std::size_t i = std::size_t(key.second.v) * 2 + key.second.u;
            mat.at(i, j).add_term(key.first, c);
        }
    }
    m.actions.emplace(t, std::move(mat));
    validate_module(m);
    return m;
}

}  // namespace motsteen
