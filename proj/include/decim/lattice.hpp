#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace decim {

/// A site of the square lattice Z^2.
struct Site {
    int32_t i1 = 0;
    int32_t i2 = 0;

    friend bool operator==(Site a, Site b) { return a.i1 == b.i1 && a.i2 == b.i2; }
    friend bool operator!=(Site a, Site b) { return !(a == b); }
};

inline double distance(Site a, Site b) {
    const double d1 = double(a.i1) - double(b.i1);
    const double d2 = double(a.i2) - double(b.i2);
    return std::sqrt(d1 * d1 + d2 * d2);
}

/// sup-norm |.|_inf, handy for box membership
inline int32_t sup_norm(Site s) {
    const int32_t a1 = s.i1 < 0 ? -s.i1 : s.i1;
    const int32_t a2 = s.i2 < 0 ? -s.i2 : s.i2;
    return a1 > a2 ? a1 : a2;
}

inline bool is_even_site(Site s) { return (s.i1 % 2 == 0) && (s.i2 % 2 == 0); }

/// Origin-centered box ([-L,L] ∩ Z)^2.
struct BoxRegion {
    int32_t half_width = 0;

    BoxRegion() = default;
    explicit BoxRegion(int32_t l) : half_width(l) {
        if (l < 0) throw std::invalid_argument("BoxRegion: half_width must be >= 0");
    }

    int32_t side() const { return 2 * half_width + 1; }
    int64_t site_count() const { return int64_t(side()) * side(); }
    bool contains(Site s) const { return sup_norm(s) <= half_width; }

    /// flat index in row-major order (lexicographic in (i1,i2))
    int64_t index(Site s) const {
        return int64_t(s.i1 + half_width) * side() + (s.i2 + half_width);
    }
    Site site_at(int64_t idx) const {
        const int32_t w = side();
        return Site{int32_t(idx / w) - half_width, int32_t(idx % w) - half_width};
    }

    friend bool operator==(BoxRegion a, BoxRegion b) { return a.half_width == b.half_width; }
};

/// A set of sites within a bounding box. Iteration is deterministic,
/// row-major in (i1,i2).
class SiteSet {
public:
    SiteSet() = default;
    explicit SiteSet(BoxRegion box) : box_(box), mask_(size_t(box.site_count()), 0) {}

    static SiteSet all_of(BoxRegion box) {
        SiteSet s(box);
        std::fill(s.mask_.begin(), s.mask_.end(), 1);
        s.count_ = box.site_count();
        return s;
    }

    BoxRegion bounding_box() const { return box_; }
    int64_t size() const { return count_; }
    bool empty() const { return count_ == 0; }

    bool contains(Site s) const {
        return box_.contains(s) && mask_[size_t(box_.index(s))] != 0;
    }

    void insert(Site s) {
        if (!box_.contains(s)) throw std::out_of_range("SiteSet::insert: site outside bounding box");
        uint8_t& m = mask_[size_t(box_.index(s))];
        if (!m) { m = 1; ++count_; }
    }
    void erase(Site s) {
        if (!box_.contains(s)) return;
        uint8_t& m = mask_[size_t(box_.index(s))];
        if (m) { m = 0; --count_; }
    }

    template <typename F>
    void for_each(F&& f) const {
        const int64_t n = box_.site_count();
        for (int64_t i = 0; i < n; ++i)
            if (mask_[size_t(i)]) f(box_.site_at(i));
    }

    std::vector<Site> sites() const {
        std::vector<Site> out;
        out.reserve(size_t(count_));
        for_each([&](Site s) { out.push_back(s); });
        return out;
    }

private:
    BoxRegion box_;
    std::vector<uint8_t> mask_;
    int64_t count_ = 0;
};

/// Sites of the box with both coordinates even (the visible sublattice 2Z^2).
SiteSet even_sublattice(BoxRegion box);

/// Complement of 2Z^2 within the box, optionally re-adding the origin.
/// With the flag set this is the decorated ("invisible") site set.
SiteSet invisible_sites(BoxRegion box, bool include_origin);

/// The annulus outer \ inner. Rejects outer.half_width <= inner.half_width.
SiteSet annulus(BoxRegion inner, BoxRegion outer);

}  // namespace decim
