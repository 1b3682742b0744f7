#include "mlturn/oracle.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <unsupported/Eigen/FFT>

namespace mlturn {

namespace {

bool is_power_of_two(Eigen::Index n) {
    return n > 0 && (n & (n - 1)) == 0;
}

// Latest delay appearing in the analytic trains for this reflection count:
// near-end terms end at 2*(floor((k_ref-1)/2)+1)*l*tau, far-end terms at
// (2*floor(k_ref/2)+1)*l*tau. Pure delay bookkeeping — no bounce-model
// gain formulas are reused here.
double last_analytic_delay(const TurnConfig& cfg) {
    const double tau = std::max(cfg.modal.tau_even, cfg.modal.tau_odd);
    const int near_i = (cfg.k_ref - 1) / 2 + 1;
    const int far_i = cfg.k_ref / 2;
    const double last = std::max(2.0 * near_i, 2.0 * far_i + 1.0);
    return last * cfg.length * tau;
}

std::complex<double> checked_ratio(std::complex<double> num, std::complex<double> den) {
    if (std::abs(den) < 1e-300) {
        throw ResonancePole("frequency-domain denominator underflowed; "
                            "the oracle grid is misconfigured");
    }
    return num / den;
}

} // namespace

OracleConfig OracleConfig::resolved(const ExcitationSpec& ex) const {
    OracleConfig r = *this;
    if (r.dt == 0.0) {
        r.dt = ex.effective_rise() / 20.0;
    }
    return r;
}

void OracleConfig::validate(const ExcitationSpec& ex) const {
    if (!is_power_of_two(n_samples) || n_samples < 1024) {
        throw std::invalid_argument("oracle n_samples must be a power of two >= 1024");
    }
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw std::invalid_argument("oracle dt must be strictly positive and finite");
    }
    const double max_dt = ex.effective_rise() / 10.0;
    if (dt > max_dt) {
        std::ostringstream msg;
        msg << "oracle dt (" << dt << " s) must not exceed a tenth of the excitation rise ("
            << max_dt << " s)";
        throw std::invalid_argument(msg.str());
    }
    if (!(settle_margin >= 1.0) || !std::isfinite(settle_margin)) {
        throw std::invalid_argument("oracle settle_margin must be >= 1");
    }
}

std::complex<double> mode_transfer(double y0, double y_mode, double tau_mode, double length,
                                   const Termination& far, NodeSide node, double frequency) {
    if (!(y0 > 0.0) || !(y_mode > 0.0) || !(tau_mode > 0.0) || !(length > 0.0)) {
        throw std::invalid_argument("mode_transfer requires positive y0, y_mode, tau_mode, length");
    }
    if (frequency < 0.0) {
        throw std::invalid_argument("mode_transfer requires f >= 0; use conjugate symmetry");
    }
    using namespace std::complex_literals;
    const double theta = 2.0 * std::numbers::pi * frequency * tau_mode * length;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double y = y_mode;

    // H = Y0/(Y0 + Y_in) with Y_in = y*(Y2 + j*y*tan)/(y + j*Y2*tan), written
    // multiplied through by the tangent denominator so no tan() poles appear.
    // The far-node transfer divides the forward wave through to the load.
    switch (far.kind) {
    case Termination::Kind::Open:
        // Y_in = j*y*tan(theta)
        return node == NodeSide::Near
                   ? checked_ratio(y0 * c, y0 * c + 1i * y * s)
                   : checked_ratio(y0, y0 * c + 1i * y * s);
    case Termination::Kind::Short:
        // Y_in = -j*y*cot(theta); no voltage develops across the short.
        return node == NodeSide::Near
                   ? checked_ratio(1i * y0 * s, y * c + 1i * y0 * s)
                   : 0.0;
    case Termination::Kind::Admittance: {
        const double y2 = far.y2;
        const std::complex<double> den = y * (y0 + y2) * c + 1i * (y0 * y2 + y * y) * s;
        return node == NodeSide::Near ? checked_ratio(y0 * (y * c + 1i * y2 * s), den)
                                      : checked_ratio(y0 * y, den);
    }
    }
    throw std::logic_error("unreachable termination kind");
}

OracleWaveforms turn_oracle(const TurnConfig& cfg, OracleConfig ocfg) {
    cfg.validate();
    ocfg = ocfg.resolved(cfg.excitation);
    ocfg.validate(cfg.excitation);

    const Eigen::Index n = ocfg.n_samples;
    const double dt = ocfg.dt;
    const double window = dt * static_cast<double>(n);
    const double needed =
        ocfg.settle_margin * (last_analytic_delay(cfg) + cfg.excitation.total_duration());
    if (window < needed) {
        std::ostringstream msg;
        msg << "oracle window n_samples*dt = " << window << " s is shorter than settle_margin * "
            << "(last response delay + pulse duration) = " << needed
            << " s; enlarge n_samples or reduce k_ref";
        throw WindowTooShort(msg.str());
    }

    // Sample the e.m.f. and transform. The full complex spectrum is used so
    // the conjugate-symmetry handling below is explicit.
    Eigen::VectorXcd emf(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        emf[j] = emf_value(cfg.excitation, dt * static_cast<double>(j));
    }
    Eigen::FFT<double> fft;
    Eigen::VectorXcd spectrum(n);
    fft.fwd(spectrum, emf);

    const double df = 1.0 / window;
    const auto apply_transfer = [&](double y_mode, double tau_mode, const Termination& far,
                                    NodeSide node) {
        Eigen::VectorXcd shaped(n);
        for (Eigen::Index k = 0; k <= n / 2; ++k) {
            const double f = df * static_cast<double>(k);
            const std::complex<double> h =
                mode_transfer(cfg.y0, y_mode, tau_mode, cfg.length, far, node, f);
            shaped[k] = spectrum[k] * h;
            if (k > 0 && k < n / 2) {
                // Negative-frequency bins via H(-f) = conj(H(f)).
                shaped[n - k] = spectrum[n - k] * std::conj(h);
            }
        }
        // The single Nyquist bin is its own mirror; forcing the product real
        // keeps the inverse transform exactly conjugate-symmetric.
        shaped[n / 2] = std::complex<double>(shaped[n / 2].real(), 0.0);
        Eigen::VectorXcd back(n);
        fft.inv(back, shaped);
        const double real_scale = back.real().cwiseAbs().maxCoeff();
        const double imag_residue = back.imag().cwiseAbs().maxCoeff();
        if (imag_residue > 1e-10 * std::max(real_scale, 1e-30)) {
            throw std::runtime_error("oracle inverse transform is not real "
                                     "(conjugate-symmetry violation)");
        }
        return Eigen::VectorXd(back.real());
    };

    const Eigen::VectorXd near_even =
        apply_transfer(cfg.modal.y_even, cfg.modal.tau_even, Termination::open(), NodeSide::Near);
    const Eigen::VectorXd near_odd =
        apply_transfer(cfg.modal.y_odd, cfg.modal.tau_odd, Termination::shorted(), NodeSide::Near);
    const Eigen::VectorXd far_even =
        apply_transfer(cfg.modal.y_even, cfg.modal.tau_even, Termination::open(), NodeSide::Far);
    // Odd-mode far transfer is identically zero at the shorted junction.

    Eigen::VectorXd vin(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        vin[j] = vin_value(cfg.excitation, dt * static_cast<double>(j));
    }

    OracleWaveforms w;
    w.w1 = {0.0, dt, 0.5 * (near_even + near_odd) - vin}; // response excludes the incident wave
    w.w2 = {0.0, dt, 0.5 * (near_even - near_odd)};
    w.w3 = {0.0, dt, 0.5 * far_even};
    return w;
}

} // namespace mlturn
