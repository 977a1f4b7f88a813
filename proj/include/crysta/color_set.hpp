#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace crysta {

inline constexpr int kNumColors = 5;

/// Subset of the color set {0,1,2,3,4}, stored as a 5-bit mask.
class ColorSet {
public:
    constexpr ColorSet() = default;
    constexpr explicit ColorSet(uint8_t mask) : mask_(mask & 0x1fu) {}

    static ColorSet of(std::initializer_list<int> colors) {
        uint8_t m = 0;
        for (int c : colors) m |= uint8_t(1u << c);
        return ColorSet(m);
    }
    static constexpr ColorSet all() { return ColorSet(0x1f); }
    /// Complement of a single color, i.e. the four colors other than `color`.
    static constexpr ColorSet hat(int color) { return ColorSet(uint8_t(0x1fu & ~(1u << color))); }

    constexpr uint8_t mask() const { return mask_; }
    constexpr bool contains(int c) const { return (mask_ >> c) & 1u; }
    constexpr int size() const { return __builtin_popcount(mask_); }
    constexpr bool empty() const { return mask_ == 0; }
    constexpr ColorSet complement() const { return ColorSet(uint8_t(0x1fu & ~mask_)); }
    constexpr ColorSet with(int c) const { return ColorSet(uint8_t(mask_ | (1u << c))); }
    constexpr ColorSet without(int c) const { return ColorSet(uint8_t(mask_ & ~(1u << c))); }

    std::vector<int> colors() const {
        std::vector<int> out;
        for (int c = 0; c < kNumColors; ++c)
            if (contains(c)) out.push_back(c);
        return out;
    }

    /// Ascending digit string, e.g. {0,2} -> "02". Used as a JSON key.
    std::string to_string() const {
        std::string s;
        for (int c = 0; c < kNumColors; ++c)
            if (contains(c)) s.push_back(char('0' + c));
        return s;
    }

    friend constexpr bool operator==(ColorSet a, ColorSet b) { return a.mask_ == b.mask_; }
    friend constexpr auto operator<=>(ColorSet a, ColorSet b) { return a.mask_ <=> b.mask_; }

private:
    uint8_t mask_ = 0;
};

/// All 2-element color sets, ascending by mask (10 of them).
std::vector<ColorSet> color_pairs();
/// All 3-element color sets, ascending by mask (10 of them).
std::vector<ColorSet> color_triples();
/// All 4-element color sets, ascending by mask (5 of them).
std::vector<ColorSet> color_quads();

}  // namespace crysta
