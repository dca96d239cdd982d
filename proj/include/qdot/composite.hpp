#pragma once

#include <complex>
#include <vector>

namespace qdot {

using cplx = std::complex<double>;

// Basis layout |dot_0 level> x ... x |dot_{n-1} level> x |photon n>, with
// three levels per dot and photon numbers 0..n_photon-1.  Index order puts
// the photon number fastest.
struct SystemLayout {
    int n_dots = 2;
    int n_photon = 3;  // fock_cutoff + 1
    static constexpr int n_levels = 3;

    int dim() const {
        int d = n_photon;
        for (int i = 0; i < n_dots; ++i) d *= n_levels;
        return d;
    }
    int dot_stride(int dot) const {
        int s = n_photon;
        for (int i = dot + 1; i < n_dots; ++i) s *= n_levels;
        return s;
    }
    int level_of(int index, int dot) const { return (index / dot_stride(dot)) % n_levels; }
    int photon_of(int index) const { return index % n_photon; }
    int index(const std::vector<int>& levels, int photon) const {
        int idx = 0;
        for (int d = 0; d < n_dots; ++d) idx += levels[d] * dot_stride(d);
        return idx + photon;
    }
};

enum class Frame { rotating, lab };

struct CompositeState {
    SystemLayout layout;
    std::vector<cplx> amps;
    Frame frame = Frame::rotating;

    double norm2() const {
        double s = 0.0;
        for (const auto& a : amps) s += std::norm(a);
        return s;
    }

    static CompositeState basis(const SystemLayout& layout, const std::vector<int>& levels,
                                int photon) {
        CompositeState st;
        st.layout = layout;
        st.amps.assign(layout.dim(), cplx{0.0, 0.0});
        st.amps[layout.index(levels, photon)] = 1.0;
        return st;
    }
};

}  // namespace qdot
