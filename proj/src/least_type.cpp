#include "pellinv/least_type.hpp"

#include "pellinv/error.hpp"

namespace pellinv {

namespace {

FamilyRecord build_family(const InverseKey& key, std::size_t palindrome_length) {
    const auto prog = progression(key);
    if (!prog) {
        throw Error(Errc::RingInfeasible, "no ring " + std::to_string(ring_index(key.ring)) +
                                              " progression for (y, x) = (" + key.y.get_str() + ", " +
                                              key.x.get_str() + ")");
    }
    FamilyRecord rec;
    rec.key = key;
    rec.progression = *prog;
    rec.palindrome_length = palindrome_length;

    const auto first_two = progression_elements(*prog, 2).elements;
    const ProgressionElement& first = first_two[0];
    const std::size_t period = period_length(first.d, key.ring);
    if (period < palindrome_length + 1) {
        rec.discarded_least = first.d;
        rec.discarded_period = period;
        rec.discarded_period_divides = (palindrome_length + 1) % period == 0;
        rec.least = first_two[1].d;
        rec.least_a0 = first_two[1].a0;
    } else {
        rec.least = first.d;
        rec.least_a0 = first.a0;
    }
    return rec;
}

}  // namespace

std::vector<ProgressionElement> FamilyRecord::elements_upto(const Integer& bound) const {
    auto all = progression_elements_upto(progression, bound).elements;
    if (discarded_least && !all.empty() && all.front().d == *discarded_least) all.erase(all.begin());
    return all;
}

std::vector<ProgressionElement> FamilyRecord::elements(std::size_t count) const {
    auto all = progression_elements(progression, count + (discarded_least ? 1 : 0)).elements;
    if (discarded_least) all.erase(all.begin());
    return all;
}

FamilyRecord reduced_family(const InverseKey& key) {
    const SymmetricForm form = symmetric_form(key.x, key.y, key.sign);
    return build_family(key, form.seq.size());
}

FamilyRecord reduced_family(const Integer& y, const Integer& x, Sign sign, Ring ring) {
    return reduced_family(make_key(y, x, sign, ring));
}

Classification classify(const Integer& d, Ring ring) {
    const Expansion e = expand_omega(d, ring);
    const auto pal = e.palindrome();
    const ContinuantMatrix m = continuant(pal);

    Classification c;
    c.d = d;
    c.ring = ring;
    c.palindrome = SymmetricSeq(std::vector<Integer>(pal.begin(), pal.end()));
    c.key = make_key(m.q_n, mod(m.r_n, m.q_n), sign_for_length(pal.size()), ring);
    // p_{l-1} = a0 q_{l-1} + r_{l-1} = family_a0 * y + x
    c.family_a0 = (e.a0 * m.q_n + m.r_n - c.key.x) / c.key.y;

    const FamilyRecord fam = build_family(c.key, pal.size());
    c.y_tilde = fam.progression.y_tilde;
    c.family_least = fam.least;
    const bool in_class = mod(Integer(c.family_a0 - fam.progression.frak_a), c.y_tilde) == 0 &&
                          c.family_a0 >= fam.progression.frak_a;
    if (!in_class || progression_d(c.key, c.family_a0) != d ||
        (fam.discarded_least && *fam.discarded_least == d)) {
        throw Error(Errc::InvalidArgument,
                    "internal: d = " + d.get_str() + " is not a retained element of its family");
    }
    c.is_least = fam.least == d;
    return c;
}

bool is_squarefree(std::uint64_t n) {
    if (n == 0) return false;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % (p * p) == 0) return false;
        if (n % p == 0) n /= p;
    }
    return true;
}

bool is_least_type_field(const Integer& d) {
    if (d <= 1) throw Error(Errc::InvalidArgument, "d must exceed 1");
    if (!mpz_fits_ulong_p(d.get_mpz_t())) throw Error(Errc::InvalidArgument, "d must fit in 64 bits");
    if (!is_squarefree(mpz_get_ui(d.get_mpz_t()))) {
        throw Error(Errc::NotSquareFree, d.get_str() + " is not square-free");
    }
    return classify(d, natural_ring(d)).is_least;
}

UnitBoundCheck non_least_unit_bound(const Integer& d, Ring ring) {
    const Classification c = classify(d, ring);
    if (c.is_least) throw Error(Errc::IsLeast, d.get_str() + " is the least element of its family");
    UnitBoundCheck out;
    out.a0 = QuadraticSurd::omega(d, ring).floor();
    out.y_tilde = c.y_tilde;
    out.a0_exceeds = out.a0 > out.y_tilde;
    out.d_exceeds = d > out.y_tilde * out.y_tilde;
    out.passed = out.a0_exceeds && out.d_exceeds;
    return out;
}

}  // namespace pellinv
