#include "mcpqe/scf.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

#include "mcpqe/errors.hpp"

namespace mcpqe {

namespace {

// STO-3G hydrogen 1s primitives (exponent, contraction over normalized prims).
struct Primitive {
  double alpha;
  double coef;
};

std::vector<Primitive> h_primitives() {
  const double e[3] = {3.425250914, 0.6239137298, 0.1688554040};
  const double c[3] = {0.1543289673, 0.5353281423, 0.4446345422};
  std::vector<Primitive> out(3);
  for (int i = 0; i < 3; ++i) {
    out[i] = {e[i], c[i] * std::pow(2.0 * e[i] / M_PI, 0.75)};
  }
  return out;
}

double boys0(double x) {
  if (x < 1e-12) {
    return 1.0 - x / 3.0;
  }
  return 0.5 * std::sqrt(M_PI / x) * std::erf(std::sqrt(x));
}

}  // namespace

SpinOrbitalIntegrals hydrogen_chain_integrals(int n_atoms, double spacing_bohr,
                                              int charge) {
  if (n_atoms < 1 || n_atoms > 16) {
    throw ConfigError("hydrogen chain length out of range: "
                      + std::to_string(n_atoms));
  }
  if (spacing_bohr <= 0.0) {
    throw ConfigError("hydrogen chain spacing must be positive");
  }
  const int nelec = n_atoms - charge;
  if (nelec <= 0 || nelec % 2 != 0) {
    throw ConfigError("hydrogen chain RHF requires an even positive electron "
                      "count; got " + std::to_string(nelec));
  }

  const auto prims = h_primitives();
  const int nb = n_atoms;
  std::vector<double> zpos(nb);
  for (int i = 0; i < nb; ++i) {
    zpos[i] = i * spacing_bohr;
  }

  Eigen::MatrixXd S(nb, nb), T(nb, nb), V(nb, nb);
  S.setZero();
  T.setZero();
  V.setZero();
  for (int i = 0; i < nb; ++i) {
    for (int j = 0; j < nb; ++j) {
      const double rab = zpos[i] - zpos[j];
      const double rab2 = rab * rab;
      for (const auto& [a, ca] : prims) {
        for (const auto& [b, cb] : prims) {
          const double p = a + b;
          const double mu = a * b / p;
          const double K = std::exp(-mu * rab2);
          const double sab = std::pow(M_PI / p, 1.5) * K;
          S(i, j) += ca * cb * sab;
          T(i, j) += ca * cb * mu * (3.0 - 2.0 * mu * rab2) * sab;
          const double pz = (a * zpos[i] + b * zpos[j]) / p;
          for (int c = 0; c < nb; ++c) {
            const double pc = pz - zpos[c];
            V(i, j) -= ca * cb * 2.0 * M_PI / p * K * boys0(p * pc * pc);
          }
        }
      }
    }
  }

  std::vector<double> eri(static_cast<std::size_t>(nb) * nb * nb * nb, 0.0);
  const auto eri_at = [&](int i, int j, int k, int l) -> double& {
    return eri[((static_cast<std::size_t>(i) * nb + j) * nb + k) * nb + l];
  };
  for (int i = 0; i < nb; ++i) {
    for (int j = 0; j < nb; ++j) {
      const double rab = zpos[i] - zpos[j];
      for (int k = 0; k < nb; ++k) {
        for (int l = 0; l < nb; ++l) {
          const double rcd = zpos[k] - zpos[l];
          double val = 0.0;
          for (const auto& [a, ca] : prims) {
            for (const auto& [b, cb] : prims) {
              const double p = a + b;
              const double kab = std::exp(-a * b / p * rab * rab);
              const double pz = (a * zpos[i] + b * zpos[j]) / p;
              for (const auto& [c, cc] : prims) {
                for (const auto& [d, cd] : prims) {
                  const double q = c + d;
                  const double kcd = std::exp(-c * d / q * rcd * rcd);
                  const double qz = (c * zpos[k] + d * zpos[l]) / q;
                  const double pq = pz - qz;
                  const double pref =
                      2.0 * std::pow(M_PI, 2.5) / (p * q * std::sqrt(p + q));
                  val += ca * cb * cc * cd * pref * kab * kcd
                         * boys0(p * q / (p + q) * pq * pq);
                }
              }
            }
          }
          eri_at(i, j, k, l) = val;
        }
      }
    }
  }

  double enuc = 0.0;
  for (int i = 0; i < nb; ++i) {
    for (int j = i + 1; j < nb; ++j) {
      enuc += 1.0 / std::abs(zpos[i] - zpos[j]);
    }
  }

  // damped closed-shell SCF
  const Eigen::MatrixXd Hcore = T + V;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> sdiag(S);
  const Eigen::MatrixXd X =
      sdiag.eigenvectors()
      * sdiag.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal()
      * sdiag.eigenvectors().transpose();
  const int nocc = nelec / 2;
  Eigen::MatrixXd F = Hcore;
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(nb, nb);
  Eigen::MatrixXd C;
  Eigen::VectorXd eps;
  double e_old = 0.0;
  bool converged = false;
  bool have_density = false;
  for (int it = 0; it < 200; ++it) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> fdiag(X.transpose() * F * X);
    eps = fdiag.eigenvalues();
    C = X * fdiag.eigenvectors();
    const Eigen::MatrixXd Cocc = C.leftCols(nocc);
    Eigen::MatrixXd Dn = 2.0 * Cocc * Cocc.transpose();
    D = have_density ? (0.5 * Dn + 0.5 * D).eval() : Dn;
    have_density = true;
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(nb, nb);
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(nb, nb);
    for (int p = 0; p < nb; ++p) {
      for (int q = 0; q < nb; ++q) {
        double jv = 0.0, kv = 0.0;
        for (int r = 0; r < nb; ++r) {
          for (int s = 0; s < nb; ++s) {
            jv += eri_at(p, q, r, s) * D(r, s);
            kv += eri_at(p, r, q, s) * D(r, s);
          }
        }
        J(p, q) = jv;
        K(p, q) = kv;
      }
    }
    F = Hcore + J - 0.5 * K;
    const double e = 0.5 * (D.array() * (Hcore + F).array()).sum() + enuc;
    if (it > 1 && std::abs(e - e_old) < 1e-10) {
      converged = true;
      break;
    }
    e_old = e;
  }
  if (!converged) {
    throw ConvergenceError("hydrogen chain SCF failed to converge");
  }

  // MO transform
  SpinOrbitalIntegrals out;
  out.resize(nb);
  out.n_electrons = nelec;
  out.ms2 = 0;
  out.core_energy = enuc;
  const Eigen::MatrixXd hmo = C.transpose() * Hcore * C;
  for (int p = 0; p < nb; ++p) {
    for (int q = 0; q < nb; ++q) {
      out.one_body(p, q) = hmo(p, q);
    }
  }
  // naive O(n^5) quarter transforms, fine at these sizes
  std::vector<double> t1(eri.size(), 0.0), t2(eri.size(), 0.0);
  for (int i = 0; i < nb; ++i) {
    for (int q = 0; q < nb; ++q) {
      for (int r = 0; r < nb; ++r) {
        for (int s = 0; s < nb; ++s) {
          double acc = 0.0;
          for (int p = 0; p < nb; ++p) {
            acc += C(p, i) * eri_at(p, q, r, s);
          }
          t1[((static_cast<std::size_t>(i) * nb + q) * nb + r) * nb + s] = acc;
        }
      }
    }
  }
  for (int i = 0; i < nb; ++i) {
    for (int j = 0; j < nb; ++j) {
      for (int r = 0; r < nb; ++r) {
        for (int s = 0; s < nb; ++s) {
          double acc = 0.0;
          for (int q = 0; q < nb; ++q) {
            acc += C(q, j)
                   * t1[((static_cast<std::size_t>(i) * nb + q) * nb + r) * nb + s];
          }
          t2[((static_cast<std::size_t>(i) * nb + j) * nb + r) * nb + s] = acc;
        }
      }
    }
  }
  for (int i = 0; i < nb; ++i) {
    for (int j = 0; j < nb; ++j) {
      for (int k = 0; k < nb; ++k) {
        for (int s = 0; s < nb; ++s) {
          double acc = 0.0;
          for (int r = 0; r < nb; ++r) {
            acc += C(r, k)
                   * t2[((static_cast<std::size_t>(i) * nb + j) * nb + r) * nb + s];
          }
          t1[((static_cast<std::size_t>(i) * nb + j) * nb + k) * nb + s] = acc;
        }
      }
    }
  }
  for (int i = 0; i < nb; ++i) {
    for (int j = 0; j < nb; ++j) {
      for (int k = 0; k < nb; ++k) {
        for (int l = 0; l < nb; ++l) {
          double acc = 0.0;
          for (int s = 0; s < nb; ++s) {
            acc += C(s, l)
                   * t1[((static_cast<std::size_t>(i) * nb + j) * nb + k) * nb + s];
          }
          out.two_body(i, j, k, l) = acc;
        }
      }
    }
  }
  out.orbital_energies.assign(eps.data(), eps.data() + nb);
  return out;
}

}  // namespace mcpqe
