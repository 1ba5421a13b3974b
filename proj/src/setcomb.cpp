#include "chowfm/setcomb.hpp"

#include <algorithm>
#include <bit>
#include <functional>

#include "chowfm/errors.hpp"

namespace chowfm {

namespace {

std::uint32_t bit_of(int i) {
    if (i < 1 || i > kMaxPoints) {
        throw ArgumentError("subset element " + std::to_string(i) + " out of range 1.." +
                            std::to_string(kMaxPoints));
    }
    return 1u << (i - 1);
}

} // namespace

Subset::Subset(std::initializer_list<int> elements) {
    for (int i : elements) bits_ |= bit_of(i);
}

Subset::Subset(const std::vector<int>& elements) {
    for (int i : elements) bits_ |= bit_of(i);
}

Subset Subset::full(int n) {
    if (n < 0 || n > kMaxPoints) throw ArgumentError("n out of range");
    return from_bits(n == 32 ? ~0u : ((1u << n) - 1u));
}

int Subset::size() const { return std::popcount(bits_); }

int Subset::min() const { return bits_ == 0 ? 0 : std::countr_zero(bits_) + 1; }

std::vector<int> Subset::elements() const {
    std::vector<int> out;
    out.reserve(size());
    for (std::uint32_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b) + 1);
    return out;
}

std::string Subset::to_string() const {
    std::string s = "{";
    bool first = true;
    for (int i : elements()) {
        if (!first) s += ',';
        s += std::to_string(i);
        first = false;
    }
    return s + "}";
}

std::strong_ordering Subset::operator<=>(const Subset& other) const {
    if (auto c = size() <=> other.size(); c != 0) return c;
    // Same size: lexicographic on sorted elements. The first differing
    // element decides; the set holding the smaller one comes first.
    const std::uint32_t diff = bits_ ^ other.bits_;
    if (diff == 0) return std::strong_ordering::equal;
    const std::uint32_t low = diff & (~diff + 1);
    return (bits_ & low) ? std::strong_ordering::less : std::strong_ordering::greater;
}

bool is_overlap(Subset s, Subset t) {
    const Subset both = s & t;
    return !both.empty() && both != s && both != t;
}

Weights::Weights(std::vector<mpq_class> a) : a_(std::move(a)) {
    if (a_.empty() || static_cast<int>(a_.size()) > kMaxPoints) {
        throw ArgumentError("number of weights must be in 1.." + std::to_string(kMaxPoints));
    }
    for (std::size_t i = 0; i < a_.size(); ++i) {
        a_[i].canonicalize();
        if (a_[i] < 0 || a_[i] > 1) {
            throw ArgumentError("weight a_" + std::to_string(i + 1) + " = " + a_[i].get_str() +
                                " is outside [0,1]");
        }
    }
}

Weights Weights::parse(const std::vector<std::string>& entries) {
    std::vector<mpq_class> a;
    a.reserve(entries.size());
    for (const auto& text : entries) {
        mpq_class q;
        const auto slash = text.find('/');
        const bool ok_shape = !text.empty() && text.find_first_not_of("+-0123456789/") == std::string::npos &&
                              (slash == std::string::npos || text.find('/', slash + 1) == std::string::npos);
        if (!ok_shape || q.set_str(text, 10) != 0) {
            throw ArgumentError("cannot parse weight '" + text + "' as a rational p/q");
        }
        if (q.get_den() == 0) throw ArgumentError("zero denominator in weight '" + text + "'");
        q.canonicalize();
        a.push_back(q);
    }
    return Weights(std::move(a));
}

mpq_class Weights::sum(Subset s) const {
    mpq_class total = 0;
    for (int i : s.elements()) total += a_.at(static_cast<std::size_t>(i - 1));
    return total;
}

LargeFamily::LargeFamily(int n, std::set<Subset> members) : n_(n), members_(std::move(members)) {
    if (n_ < 1 || n_ > kMaxPoints) throw ArgumentError("n must be in 1.." + std::to_string(kMaxPoints));
    const Subset universe = Subset::full(n_);
    for (Subset s : members_) {
        if (!s.is_subset_of(universe)) {
            throw ArgumentError("large set " + s.to_string() + " is not a subset of [" + std::to_string(n_) + "]");
        }
        if (s.size() < 2) throw ArgumentError("large set " + s.to_string() + " has fewer than two elements");
        for (int i = 1; i <= n_; ++i) {
            const Subset bigger = s | Subset{i};
            if (bigger != s && !members_.count(bigger)) {
                throw ArgumentError("family is not upward closed: " + s.to_string() + " is large but " +
                                    bigger.to_string() + " is not");
            }
        }
    }
}

LargeFamily LargeFamily::empty(int n) { return LargeFamily(n, {}); }

LargeFamily LargeFamily::all_subsets(int n) {
    std::set<Subset> members;
    const std::uint32_t limit = Subset::full(n).bits();
    for (std::uint32_t b = 1; b <= limit && b != 0; ++b) {
        const Subset s = Subset::from_bits(b);
        if (s.size() >= 2) members.insert(s);
    }
    return LargeFamily(n, std::move(members));
}

std::string LargeFamily::to_string() const {
    std::string s = "{";
    bool first = true;
    for (Subset m : members_) {
        if (!first) s += ',';
        s += m.to_string();
        first = false;
    }
    return s + "}";
}

LargeFamily large_from_weights(const Weights& w) {
    std::set<Subset> members;
    const std::uint32_t limit = Subset::full(w.n()).bits();
    for (std::uint32_t b = 1; b <= limit && b != 0; ++b) {
        const Subset s = Subset::from_bits(b);
        if (s.size() >= 2 && w.sum(s) > 1) members.insert(s);
    }
    return LargeFamily(w.n(), std::move(members));
}

void validate_walk(const LargeFamily& family, const Walk& w) {
    if (w.steps.size() != family.size()) {
        throw WalkOrderError("walk has " + std::to_string(w.steps.size()) + " steps but the family has " +
                             std::to_string(family.size()) + " members");
    }
    std::set<Subset> seen;
    for (Subset s : w.steps) {
        if (!family.contains(s)) throw WalkOrderError("walk step " + s.to_string() + " is not a large set");
        if (!seen.insert(s).second) throw WalkOrderError("walk repeats " + s.to_string());
        for (Subset other : family.members()) {
            if (s.is_strict_subset_of(other) && !seen.count(other)) {
                throw WalkOrderError("walk visits " + s.to_string() + " before its superset " + other.to_string());
            }
        }
    }
}

Walk canonical_walk(const LargeFamily& family) {
    Walk w{{family.members().begin(), family.members().end()}};
    std::stable_sort(w.steps.begin(), w.steps.end(), [](Subset a, Subset b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a < b;
    });
    return w;
}

std::vector<Walk> all_walks(const LargeFamily& family, std::size_t cap) {
    if (family.size() > cap) {
        throw SizeCapError("all_walks: family has " + std::to_string(family.size()) + " members, cap is " +
                           std::to_string(cap));
    }
    const std::vector<Subset> members(family.members().begin(), family.members().end());
    const std::size_t k = members.size();
    // must_precede[i]: bitmask of members that are strict supersets of members[i].
    std::vector<std::uint32_t> must_precede(k, 0);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (members[i].is_strict_subset_of(members[j])) must_precede[i] |= 1u << j;

    std::vector<Walk> out;
    Walk current;
    std::function<void(std::uint32_t)> extend = [&](std::uint32_t placed) {
        if (current.steps.size() == k) {
            out.push_back(current);
            return;
        }
        for (std::size_t i = 0; i < k; ++i) {
            if ((placed >> i) & 1u) continue;
            if ((must_precede[i] & placed) != must_precede[i]) continue;
            current.steps.push_back(members[i]);
            extend(placed | (1u << i));
            current.steps.pop_back();
        }
    };
    extend(0);
    std::sort(out.begin(), out.end(), [](const Walk& a, const Walk& b) { return a.steps < b.steps; });
    return out;
}

Subset MergeResult::lift(Subset merged, Subset t) const {
    Subset out;
    for (int b : merged.elements()) out = out | (b == merged_label ? t : Subset{preimage.at(b)});
    return out;
}

Subset MergeResult::push(Subset old) const {
    Subset out;
    for (int a : old.elements()) out = out | Subset{relabel.at(a)};
    return out;
}

MergeResult merge_family(const LargeFamily& processed, Subset t) {
    const int n = processed.n();
    if (t.empty() || !t.is_subset_of(Subset::full(n))) {
        throw ArgumentError("merge_family: " + t.to_string() + " is not a nonempty subset of [" + std::to_string(n) + "]");
    }
    if (processed.contains(t)) {
        throw WalkOrderError("merge_family: " + t.to_string() + " is already large in the processed family");
    }
    const std::uint32_t full = Subset::full(n).bits();
    for (std::uint32_t b = 1; b <= full && b != 0; ++b) {
        const Subset s = Subset::from_bits(b);
        if (t.is_strict_subset_of(s) && !processed.contains(s)) {
            throw WalkOrderError("merge_family: superset " + s.to_string() + " of " + t.to_string() +
                                 " has not been processed");
        }
    }

    const int star = t.min();
    std::vector<int> relabel(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> preimage{0};
    int next = 0;
    for (int a = 1; a <= n; ++a) {
        if (t.contains(a) && a != star) continue;
        relabel[a] = ++next;
        preimage.push_back(a);
    }
    const int m = next;
    for (int a : t.elements()) relabel[a] = relabel[star];

    MergeResult result{m, relabel[star], std::move(relabel), std::move(preimage), LargeFamily::empty(m)};
    std::set<Subset> merged;
    const std::uint32_t mfull = Subset::full(m).bits();
    for (std::uint32_t b = 1; b <= mfull && b != 0; ++b) {
        const Subset s = Subset::from_bits(b);
        if (s.size() >= 2 && processed.contains(result.lift(s, t))) merged.insert(s);
    }
    result.family = LargeFamily(m, std::move(merged));
    return result;
}

Subset permute(Subset s, const std::vector<int>& perm) {
    Subset out;
    for (int i : s.elements()) out = out | Subset{perm.at(i)};
    return out;
}

LargeFamily permute(const LargeFamily& family, const std::vector<int>& perm) {
    std::set<Subset> members;
    for (Subset s : family.members()) members.insert(permute(s, perm));
    return LargeFamily(family.n(), std::move(members));
}

} // namespace chowfm
