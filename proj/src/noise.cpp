// Copyright 2026 xzzxsim Contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "xzzx/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace xzzx {

namespace {
constexpr double kTol = 1e-12;

double xlog2x(double x) { return x <= 0.0 ? 0.0 : x * std::log2(x); }

/// Shannon entropy (bits) of (1-p, p r_x, p r_y, p r_z).
double channel_entropy(double p, double rx, double ry, double rz) {
    return -(xlog2x(1 - p) + xlog2x(p * rx) + xlog2x(p * ry) + xlog2x(p * rz));
}

/// Low-rate Paulis for a given high-rate axis.
std::pair<Pauli, Pauli> low_rate_letters(Pauli axis) {
    switch (axis) {
        case Pauli::Z: return {Pauli::X, Pauli::Y};
        case Pauli::X: return {Pauli::Z, Pauli::Y};
        case Pauli::Y: return {Pauli::X, Pauli::Z};
        default: throw std::invalid_argument("bias axis must be X, Y or Z");
    }
}
}  // namespace

void PauliChannel::validate() const {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("channel p must be in [0,1]");
    if (r_x < 0 || r_y < 0 || r_z < 0)
        throw std::invalid_argument("channel components must be nonnegative");
    if (std::abs(r_x + r_y + r_z - 1.0) > kTol)
        throw std::invalid_argument("channel components must sum to 1");
}

void BiasSpec::validate() const {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("bias p must be in [0,1]");
    if (!(eta >= 0.5)) throw std::invalid_argument("bias eta must be >= 1/2");
    if (axis == Pauli::I) throw std::invalid_argument("bias axis must be X, Y or Z");
}

PauliChannel bias_to_channel(const BiasSpec& spec) {
    spec.validate();
    double high = spec.eta == kInfiniteBias ? 1.0 : spec.eta / (spec.eta + 1);
    double low = spec.eta == kInfiniteBias ? 0.0 : 1.0 / (2 * (spec.eta + 1));
    PauliChannel c;
    c.p = spec.p;
    c.r_x = c.r_y = c.r_z = low;
    switch (spec.axis) {
        case Pauli::X: c.r_x = high; break;
        case Pauli::Y: c.r_y = high; break;
        case Pauli::Z: c.r_z = high; break;
        default: break;
    }
    c.validate();
    return c;
}

BiasSpec channel_to_bias(const PauliChannel& channel) {
    channel.validate();
    // The axis is the dominant component (Z wins ties so the depolarising
    // channel maps to the default axis).
    Pauli axis = Pauli::Z;
    double high = channel.r_z;
    if (channel.r_y > high + kTol) {
        axis = Pauli::Y;
        high = channel.r_y;
    }
    if (channel.r_x > high + kTol) {
        axis = Pauli::X;
        high = channel.r_x;
    }
    double lo1, lo2;
    switch (axis) {
        case Pauli::X: lo1 = channel.r_y; lo2 = channel.r_z; break;
        case Pauli::Y: lo1 = channel.r_x; lo2 = channel.r_z; break;
        default: lo1 = channel.r_x; lo2 = channel.r_y; break;
    }
    if (std::abs(lo1 - lo2) > kTol)
        throw std::invalid_argument("channel_to_bias requires equal low-rate components");
    BiasSpec spec;
    spec.p = channel.p;
    spec.axis = axis;
    double low_sum = lo1 + lo2;
    spec.eta = low_sum <= 0.0 ? kInfiniteBias : high / low_sum;
    spec.validate();
    return spec;
}

PhenomenologicalNoise PhenomenologicalNoise::from_bias(double p, double eta, int rounds,
                                                       Pauli axis) {
    BiasSpec spec{p, eta, axis};
    spec.validate();
    PhenomenologicalNoise n;
    n.p_hr = spec.p_high_rate();
    n.p_lr = spec.p_low_rate();
    n.q = n.p_hr + n.p_lr;
    n.rounds = rounds;
    n.axis = axis;
    n.validate();
    return n;
}

void PhenomenologicalNoise::validate() const {
    if (p_hr < 0 || p_lr < 0 || q < 0 || q > 1)
        throw std::invalid_argument("phenomenological rates out of range");
    if (p_hr + 2 * p_lr > 1) throw std::invalid_argument("total error probability exceeds 1");
    if (rounds < 1) throw std::invalid_argument("rounds must be >= 1");
}

PauliOperator sample_error(const PauliChannel& channel, std::size_t n, Rng& rng) {
    channel.validate();
    PauliOperator err(n);
    const double tx = channel.p * channel.r_x;
    const double txy = tx + channel.p * channel.r_y;
    const double txyz = txy + channel.p * channel.r_z;
    for (std::size_t q = 0; q < n; q++) {
        double u = rng.uniform();
        if (u >= txyz) continue;
        if (u < tx)
            err.set(q, Pauli::X);
        else if (u < txy)
            err.set(q, Pauli::Y);
        else
            err.set(q, Pauli::Z);
    }
    return err;
}

SpacetimeSample sample_spacetime(const PhenomenologicalNoise& noise, const StabilizerCode& code,
                                 Rng& rng, TemporalClosure closure) {
    noise.validate();
    auto [low1, low2] = low_rate_letters(noise.axis);
    const int T = noise.rounds;
    const int F = code.num_faces();

    SpacetimeSample out;
    out.closure = closure;
    out.cumulative.reserve(T);
    out.measured.reserve(T);
    out.flips.reserve(T);

    PauliOperator acc(code.n);
    BitVec true_syndrome(F);
    const double t1 = noise.p_hr;
    const double t2 = t1 + noise.p_lr;
    const double t3 = t2 + noise.p_lr;
    for (int t = 0; t < T; t++) {
        // Data errors in the interval before this measurement round.
        for (int qb = 0; qb < code.n; qb++) {
            double u = rng.uniform();
            if (u >= t3) continue;
            Pauli letter = u < t1 ? noise.axis : (u < t2 ? low1 : low2);
            Pauli old = acc.at(qb);
            acc.set(qb, static_cast<Pauli>(uint8_t(old) ^ uint8_t(letter)));
            for (int f : code.defect_faces(qb, letter)) true_syndrome.flip(f);
        }
        out.cumulative.push_back(acc);
        BitVec flips(F);
        BitVec measured = true_syndrome;
        for (int f = 0; f < F; f++) {
            if (rng.bernoulli(noise.q)) {
                flips.set(f, true);
                measured.flip(f);
            }
        }
        out.flips.push_back(std::move(flips));
        out.measured.push_back(std::move(measured));
    }
    out.final_true_syndrome = true_syndrome;
    return out;
}

double hashing_bound(double r_x, double r_y, double r_z) {
    PauliChannel probe{1.0, r_x, r_y, r_z};
    probe.validate();
    // A pure channel reduces to the binary entropy, whose zero-rate point is
    // exactly 1/2.
    if ((r_x == 1.0 && r_y == 0.0 && r_z == 0.0) || (r_y == 1.0 && r_x == 0.0 && r_z == 0.0) ||
        (r_z == 1.0 && r_x == 0.0 && r_y == 0.0))
        return 0.5;
    auto H = [&](double p) { return channel_entropy(p, r_x, r_y, r_z); };

    // H is concave in p with H(0) = 0; locate the peak by ternary search,
    // then bisect the rising branch for H = 1.
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200; it++) {
        double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
        if (H(m1) < H(m2))
            lo = m1;
        else
            hi = m2;
    }
    double p_peak = 0.5 * (lo + hi);
    double h_peak = H(p_peak);
    if (h_peak < 1.0 - 1e-9)
        throw std::invalid_argument("channel entropy never reaches 1 bit");

    double a = 0.0, b = p_peak;
    for (int it = 0; it < 100 && (b - a) > 1e-12; it++) {
        double mid = 0.5 * (a + b);
        if (H(mid) < 1.0)
            a = mid;
        else
            b = mid;
    }
    return 0.5 * (a + b);
}

}  // namespace xzzx
