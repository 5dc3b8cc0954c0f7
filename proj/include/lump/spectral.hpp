#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace lump::spectral {

struct SpectralGrid {
    double Lx, Ly;     // half-lengths of the periodic box
    unsigned Nx, Ny;   // even resolutions
};

/// Fourier-collocation discretization of the second-variation operator
///   S v = -v_xx + v - 6 u v + dx^-2 dyy v
/// on the admissible subspace {k_x != 0}.  Excluded modes (the k_x = 0
/// rows) are mapped to a large constant C so the discretized operator
/// stays symmetric positive on their span and they never pollute the low
/// spectrum: the implemented action is  P S P + C (I - P).
class SpectralProblem {
  public:
    SpectralProblem(const SpectralGrid& g, const std::function<double(double, double)>& u);
    ~SpectralProblem();
    SpectralProblem(const SpectralProblem&) = delete;
    SpectralProblem& operator=(const SpectralProblem&) = delete;

    const SpectralGrid& grid() const { return grid_; }
    unsigned size() const { return grid_.Nx * grid_.Ny; }
    double umax() const { return umax_; }
    double excluded_constant() const { return C_; }

    void apply(const double* v, double* out) const;
    std::vector<double> apply(const std::vector<double>& v) const;
    /// remove k_x = 0 content in place
    void project(double* v) const;
    /// z <- (diag symbol - sigma)^{-1} r  (Fourier preconditioner)
    void precondition(const double* r, double* z, double sigma) const;

  private:
    SpectralGrid grid_;
    double umax_, C_;
    std::vector<double> pot_;  // 6 u samples
    struct Fft;
    Fft* fft_;
};

/// sample a function at the collocation points (row-major, x outer)
std::vector<double> sample(const SpectralGrid& g,
                           const std::function<double(double, double)>& f);

struct EigResult {
    std::vector<double> values;                 // ascending
    std::vector<std::vector<double>> vectors;   // matching order, unit norm
    std::vector<double> residuals;              // ||S v - lambda v||
    unsigned iterations = 0;
    double sigma = 0;
};

/// m smallest eigenvalues by shift-invert Lanczos (full reorthogonalization)
/// with an inner preconditioned CG solve; throws on non-convergence
EigResult lowest_eigs(const SpectralProblem& p, unsigned m, double tol = 1e-8,
                      unsigned max_solves = 900);

/// dense cross-check (small grids only: Nx * Ny <= 4096)
EigResult dense_lowest_eigs(const SpectralProblem& p, unsigned m);

/// number of eigenvalues below -delta_neg
int morse_index(const EigResult& e, double delta_neg = 1e-2);

struct KernelReport {
    int count = 0;
    double delta0 = 0;
    double gap_ratio = 0;
    bool conclusive = false;
    std::vector<unsigned> indices;  // positions of the near-kernel eigenpairs
};

/// near-zero eigenvalue count; delta0 = 0 picks the threshold automatically
/// at the largest relative jump of the sorted |lambda|
KernelReport kernel_count(const EigResult& e, double delta0 = 0);

/// relative defect of the projection of a grid field onto the numerical
/// near-kernel span
double projection_defect(const EigResult& e, const KernelReport& k,
                         const std::vector<double>& field);

// ---- eigenvalue cache (HLL_CACHE_DIR) ----------------------------------

uint64_t fnv1a(const std::string& s);
std::optional<std::vector<double>> cache_lookup(const std::string& key);
void cache_store(const std::string& key, const std::vector<double>& values);

}  // namespace lump::spectral
