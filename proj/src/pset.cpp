#include "spacelab/pset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace spacelab {

namespace {

bool strictly_increasing_positive(const std::vector<Int>& v) {
    if (!v.empty() && v.front() < 1) return false;
    return std::adjacent_find(v.begin(), v.end(), [](Int a, Int b) { return a >= b; }) == v.end();
}

bool is_square(Int n) {
    if (n < 0) return false;
    auto r = static_cast<Int>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r * r == n;
}

double frac(double x) { return x - std::floor(x); }

bool bohr_contains(const node::Bohr& b, Int n) {
    const double f = frac(static_cast<double>(n) * b.alpha);
    return f > b.lo + kBohrMargin && f < b.hi - kBohrMargin;
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::vector<Int> int_list(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_array())
        throw ValidationError(std::string("pset json: missing integer list \"") + key + "\"");
    std::vector<Int> out;
    for (const auto& e : j.at(key)) {
        if (!e.is_number_integer()) throw ValidationError(std::string("pset json: non-integer in \"") + key + "\"");
        out.push_back(e.get<Int>());
    }
    return out;
}

std::vector<PSetSpec> part_list(const nlohmann::json& j) {
    if (!j.contains("of") || !j.at("of").is_array()) throw ValidationError("pset json: \"of\" must be a list");
    std::vector<PSetSpec> parts;
    for (const auto& e : j.at("of")) parts.push_back(PSetSpec::from_json(e));
    return parts;
}

Bits materialize(const PSetSpec& spec, Int horizon) {
    const auto H = static_cast<std::size_t>(horizon);
    Bits bits(H);
    std::visit(
        overloaded{
            [&](const node::Explicit& e) {
                for (Int x : e.elems)
                    if (x <= horizon) bits.set(static_cast<std::size_t>(x - 1));
            },
            [&](const node::Multiples& m) {
                for (Int x = m.k; x <= horizon; x += m.k) bits.set(static_cast<std::size_t>(x - 1));
            },
            [&](const node::Squares&) {
                for (Int r = 1; r * r <= horizon; ++r) bits.set(static_cast<std::size_t>(r * r - 1));
            },
            [&](const node::FiniteSums& fs) {
                // reach has bit s set iff s is a nonempty subset sum seen so far (bit 0 unused).
                Bits reach(H + 1);
                for (Int g : fs.gens) {
                    if (g > horizon) continue;
                    Bits shifted(H + 1);
                    shifted.or_shifted_up(reach, static_cast<std::size_t>(g));
                    reach |= shifted;
                    reach.set(static_cast<std::size_t>(g));
                }
                for (Int s = 1; s <= horizon; ++s)
                    if (reach.test(static_cast<std::size_t>(s))) bits.set(static_cast<std::size_t>(s - 1));
            },
            [&](const node::DeltaOf& d) {
                for (std::size_t i = 0; i < d.seq.size(); ++i)
                    for (std::size_t j = 0; j < i; ++j) {
                        const Int diff = d.seq[i] - d.seq[j];
                        if (diff <= horizon) bits.set(static_cast<std::size_t>(diff - 1));
                    }
            },
            [&](const node::DiffSet& d) {
                for (std::size_t i = 0; i < d.base.size(); ++i)
                    for (std::size_t j = 0; j < i; ++j) {
                        const Int diff = d.base[i] - d.base[j];
                        if (diff <= horizon) bits.set(static_cast<std::size_t>(diff - 1));
                    }
            },
            [&](const node::Bohr& b) {
                for (Int n = 1; n <= horizon; ++n)
                    if (bohr_contains(b, n)) bits.set(static_cast<std::size_t>(n - 1));
            },
            [&](const node::Complement& c) { bits = ~materialize(*c.of, horizon); },
            [&](const node::Union& u) {
                for (const auto& p : u.parts) bits |= materialize(p, horizon);
            },
            [&](const node::Intersect& in) {
                bits.set_all();
                for (const auto& p : in.parts) bits &= materialize(p, horizon);
            },
        },
        spec.node());
    return bits;
}

}  // namespace

PSetSpec PSetSpec::naturals_upto(Int horizon) {
    std::vector<Int> all(static_cast<std::size_t>(std::max<Int>(horizon, 0)));
    std::iota(all.begin(), all.end(), Int{1});
    return explicit_set(std::move(all));
}

PSetSpec PSetSpec::complement(PSetSpec of) {
    return PSetSpec(node::Complement{std::make_shared<const PSetSpec>(std::move(of))});
}

void PSetSpec::validate() const { validate_at("root"); }

void PSetSpec::validate_at(const std::string& path) const {
    auto fail = [&](const std::string& msg) { throw ValidationError(path + ": " + msg); };
    std::visit(overloaded{
                   [&](const node::Explicit& e) {
                       if (!strictly_increasing_positive(e.elems))
                           fail("explicit elements must be strictly increasing and >= 1");
                   },
                   [&](const node::Multiples& m) {
                       if (m.k < 1) fail("multiples needs k >= 1");
                   },
                   [&](const node::Squares&) {},
                   [&](const node::FiniteSums& fs) {
                       if (fs.gens.empty()) fail("fs needs at least one generator");
                       for (Int g : fs.gens)
                           if (g < 1) fail("fs generators must be >= 1");
                   },
                   [&](const node::DeltaOf& d) {
                       if (!strictly_increasing_positive(d.seq))
                           fail("delta sequence must be strictly increasing and >= 1");
                   },
                   [&](const node::DiffSet& d) {
                       if (!strictly_increasing_positive(d.base))
                           fail("diffset base must be strictly increasing and >= 1");
                   },
                   [&](const node::Bohr& b) {
                       if (!(b.alpha > 0.0 && b.alpha < 1.0)) fail("bohr alpha must lie in (0,1)");
                       if (!(b.lo >= 0.0 && b.hi <= 1.0 && b.hi - b.lo > 0.0))
                           fail("bohr interval must satisfy 0 <= lo < hi <= 1");
                   },
                   [&](const node::Complement& c) {
                       if (!c.of) fail("complement without operand");
                       c.of->validate_at(path + ".of");
                   },
                   [&](const node::Union& u) {
                       if (u.parts.empty()) fail("union needs at least one part");
                       for (std::size_t i = 0; i < u.parts.size(); ++i)
                           u.parts[i].validate_at(path + ".of[" + std::to_string(i) + "]");
                   },
                   [&](const node::Intersect& in) {
                       if (in.parts.empty()) fail("intersect needs at least one part");
                       for (std::size_t i = 0; i < in.parts.size(); ++i)
                           in.parts[i].validate_at(path + ".of[" + std::to_string(i) + "]");
                   },
               },
               node_);
}

bool PSetSpec::contains(Int n) const {
    if (n < 1) return false;
    return std::visit(
        overloaded{
            [&](const node::Explicit& e) { return std::binary_search(e.elems.begin(), e.elems.end(), n); },
            [&](const node::Multiples& m) { return n % m.k == 0; },
            [&](const node::Squares&) { return is_square(n); },
            [&](const node::FiniteSums& fs) {
                // subset-sum reachability of exactly n with at least one generator.
                std::vector<char> reach(static_cast<std::size_t>(n + 1), 0);
                for (Int g : fs.gens) {
                    if (g > n) continue;
                    for (Int s = n; s > g; --s)
                        if (reach[static_cast<std::size_t>(s - g)]) reach[static_cast<std::size_t>(s)] = 1;
                    reach[static_cast<std::size_t>(g)] = 1;
                }
                return reach[static_cast<std::size_t>(n)] != 0;
            },
            [&](const node::DeltaOf& d) {
                for (Int s : d.seq)
                    if (std::binary_search(d.seq.begin(), d.seq.end(), s + n)) return true;
                return false;
            },
            [&](const node::DiffSet& d) {
                for (Int s : d.base)
                    if (std::binary_search(d.base.begin(), d.base.end(), s + n)) return true;
                return false;
            },
            [&](const node::Bohr& b) { return bohr_contains(b, n); },
            [&](const node::Complement& c) { return !c.of->contains(n); },
            [&](const node::Union& u) {
                return std::any_of(u.parts.begin(), u.parts.end(), [&](const PSetSpec& p) { return p.contains(n); });
            },
            [&](const node::Intersect& in) {
                return std::all_of(in.parts.begin(), in.parts.end(),
                                   [&](const PSetSpec& p) { return p.contains(n); });
            },
        },
        node_);
}

nlohmann::json PSetSpec::to_json() const {
    using nlohmann::json;
    return std::visit(overloaded{
                          [](const node::Explicit& e) { return json{{"type", "explicit"}, {"elems", e.elems}}; },
                          [](const node::Multiples& m) { return json{{"type", "multiples"}, {"k", m.k}}; },
                          [](const node::Squares&) { return json{{"type", "squares"}}; },
                          [](const node::FiniteSums& fs) { return json{{"type", "fs"}, {"gens", fs.gens}}; },
                          [](const node::DeltaOf& d) { return json{{"type", "delta"}, {"seq", d.seq}}; },
                          [](const node::DiffSet& d) { return json{{"type", "diffset"}, {"set", d.base}}; },
                          [](const node::Bohr& b) {
                              return json{{"type", "bohr"}, {"alpha", b.alpha}, {"interval", {b.lo, b.hi}}};
                          },
                          [](const node::Complement& c) { return json{{"type", "complement"}, {"of", c.of->to_json()}}; },
                          [](const node::Union& u) {
                              json parts = json::array();
                              for (const auto& p : u.parts) parts.push_back(p.to_json());
                              return json{{"type", "union"}, {"of", parts}};
                          },
                          [](const node::Intersect& in) {
                              json parts = json::array();
                              for (const auto& p : in.parts) parts.push_back(p.to_json());
                              return json{{"type", "intersect"}, {"of", parts}};
                          },
                      },
                      node_);
}

PSetSpec PSetSpec::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("type") || !j.at("type").is_string())
        throw ValidationError("pset json: expected an object with a string \"type\"");
    const auto type = j.at("type").get<std::string>();
    if (type == "explicit") return explicit_set(int_list(j, "elems"));
    if (type == "multiples") {
        if (!j.contains("k") || !j.at("k").is_number_integer()) throw ValidationError("pset json: multiples needs integer k");
        return multiples(j.at("k").get<Int>());
    }
    if (type == "squares") return squares();
    if (type == "fs") return finite_sums(int_list(j, "gens"));
    if (type == "delta") return delta_of(int_list(j, "seq"));
    if (type == "diffset") return diff_set(int_list(j, "set"));
    if (type == "bohr") {
        if (!j.contains("alpha") || !j.at("alpha").is_number() || !j.contains("interval") ||
            !j.at("interval").is_array() || j.at("interval").size() != 2)
            throw ValidationError("pset json: bohr needs alpha and a two-element interval");
        return bohr(j.at("alpha").get<double>(), j.at("interval")[0].get<double>(), j.at("interval")[1].get<double>());
    }
    if (type == "complement") {
        if (!j.contains("of")) throw ValidationError("pset json: complement needs \"of\"");
        return complement(from_json(j.at("of")));
    }
    if (type == "union") return union_of(part_list(j));
    if (type == "intersect") return intersect(part_list(j));
    throw ValidationError("pset json: unknown type \"" + type + "\"");
}

std::string PSetSpec::digest() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

PSetView::PSetView(Int horizon, Bits membership, std::string spec_digest)
    : horizon_(horizon), bits_(std::move(membership)), digest_(std::move(spec_digest)) {
    if (horizon_ < 1) throw ValidationError("pset view: horizon must be >= 1");
    if (bits_.size() != static_cast<std::size_t>(horizon_)) throw ValidationError("pset view: membership length != horizon");
}

bool PSetView::member(Int n) const {
    if (n < 1 || n > horizon_)
        throw OutOfRangeError("member: " + std::to_string(n) + " outside [1.." + std::to_string(horizon_) + "]");
    return test(n);
}

std::vector<Int> PSetView::elements() const {
    std::vector<Int> out;
    bits_.for_each_set([&](std::size_t i) { out.push_back(static_cast<Int>(i) + 1); });
    return out;
}

PSetView build_pset(const PSetSpec& spec, Int horizon) {
    if (horizon < 1) throw ValidationError("build_pset: horizon must be >= 1");
    spec.validate();
    return PSetView(horizon, materialize(spec, horizon), spec.digest());
}

bool member(const PSetView& view, Int n) { return view.member(n); }

Int max_window_count(const PSetView& view, Int window) {
    const Int H = view.horizon();
    if (window < 1 || window > H) throw ValidationError("window length must lie in [1..H]");
    Int cur = 0;
    for (Int n = 1; n <= window; ++n) cur += view.test(n);
    Int best = cur;
    for (Int m = window + 1; m <= H; ++m) {
        cur += Int{view.test(m)} - Int{view.test(m - window)};
        best = std::max(best, cur);
    }
    return best;
}

DensityReport density_report(const PSetView& view, Int n0, const std::vector<Int>& window_grid) {
    const Int H = view.horizon();
    if (window_grid.empty()) throw ValidationError("density_report: empty window grid");
    if (n0 < 1 || n0 > H) throw ValidationError("density_report: n0 must lie in [1..H]");
    for (Int w : window_grid)
        if (w < 1 || w > H) throw ValidationError("density_report: window " + std::to_string(w) + " outside [1..H]");

    DensityReport r;
    r.horizon = H;
    r.n0 = n0;
    r.prefix_densities.reserve(static_cast<std::size_t>(H));
    Int count = 0;
    for (Int n = 1; n <= H; ++n) {
        count += view.test(n);
        r.prefix_densities.emplace_back(n, Rational(count, n));
    }
    r.lower_est = r.prefix_at(n0);
    r.upper_est = r.lower_est;
    for (Int n = n0; n <= H; ++n) {
        r.lower_est = std::min(r.lower_est, r.prefix_at(n));
        r.upper_est = std::max(r.upper_est, r.prefix_at(n));
    }
    for (Int w : window_grid) r.banach_profile.emplace_back(w, Rational(max_window_count(view, w), w));
    return r;
}

std::string to_string(const Rational& r) {
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace spacelab
