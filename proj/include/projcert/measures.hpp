#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace projcert {

/// Regular signed measure on [0,1] supported on finitely many atoms.
struct AtomicMeasure {
    struct Atom {
        double t;   // in [0,1]
        double w;   // signed weight
        bool operator==(const Atom&) const = default;
    };

    std::vector<Atom> atoms;

    AtomicMeasure() = default;
    explicit AtomicMeasure(std::vector<Atom> a) : atoms(std::move(a)) {
        for (const auto& atom : atoms)
            if (atom.t < 0.0 || atom.t > 1.0)
                throw std::invalid_argument("AtomicMeasure: atom outside [0,1]");
    }

    static AtomicMeasure zero() { return AtomicMeasure{}; }

    /// v(mu, [0,1]) = sum |w_i|.
    double total_variation() const {
        double s = 0.0;
        for (const auto& a : atoms) s += std::abs(a.w);
        return s;
    }

    /// mu([0,1]) = sum w_i.
    double total_mass() const {
        double s = 0.0;
        for (const auto& a : atoms) s += a.w;
        return s;
    }

    /// <mu, f> = sum f(t_i) w_i.
    double pair_with(const std::function<double(double)>& f) const {
        double s = 0.0;
        for (const auto& a : atoms) s += f(a.t) * a.w;
        return s;
    }

    bool is_zero() const { return atoms.empty(); }

    friend AtomicMeasure operator*(double c, const AtomicMeasure& m) {
        AtomicMeasure out = m;
        for (auto& a : out.atoms) a.w *= c;
        return out;
    }

    bool operator==(const AtomicMeasure&) const = default;
};

struct MeasurePairing {
    double pairing;
    double tv;
};

inline MeasurePairing measure_pair_and_tv(const AtomicMeasure& mu,
                                          const std::function<double(double)>& f) {
    return {mu.pair_with(f), mu.total_variation()};
}

}  // namespace projcert
