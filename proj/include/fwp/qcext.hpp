/// \file qcext.hpp
/// The cell-by-cell quasiconformal extension of the circle homeomorphism of a
/// finite balanced shear function, and its Beltrami coefficient.
///
/// Cells are normalized so their vertex sits at infinity of the upper
/// half-plane with fan edges e_n = (n, infinity). The cell is {y >= u(x)},
/// cut into strips A_n over [n - 1/2, n + 1/2]. Hyperbolic L^2 values are
/// integrals of |mu|^2 dA / y^2 in that picture, which is four times the
/// disk integral of |mu|^2 / (1 - |z|^2)^2.
#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "fwp/coords.hpp"
#include "fwp/develop.hpp"

namespace fwp {

/// The scalloped boundary of the cell at infinity: sqrt(1 - (x - n)^2) for
/// the nearest integer n.
double boundary_u(double x);

/// Geometry of the geodesic between the centers of the triangles
/// (-rho, 0, infinity) and (0, lambda, infinity).
struct StripGeom {
  double rho, lambda;
  double r;    // Euclidean radius
  double ell;  // hyperbolic length
  double K;
  StripGeom(double rho, double lambda);
};

struct AlphaBeta {
  double alpha, beta;
  double dalpha, dbeta;
};

/// alpha_{rho,lambda}, beta_{rho,lambda} and their derivatives at local
/// x in [-1/2, 1/2].
AlphaBeta alpha_beta(const StripGeom& g, double x);
inline AlphaBeta alpha_beta(double rho, double lambda, double x) { return alpha_beta(StripGeom(rho, lambda), x); }

/// Beltrami coefficient of psi on the strip; independent of y.
Complex strip_mu(const StripGeom& g, double x);
inline Complex strip_mu(double rho, double lambda, double x) { return strip_mu(StripGeom(rho, lambda), x); }

/// Integral of |mu|^2 / u over [-1/2, 1/2], i.e. the hyperbolic L^2 of mu on
/// the strip. Zero when rho = lambda = 1.
double strip_l2(double rho, double lambda);
/// max |mu| over a uniform grid of 1025 points on [-1/2, 1/2].
double strip_sup(double rho, double lambda);

/// Gap data of the cell at v: lambda_n = exp(-p_{s,v}(e_n+)), equal to 1 for
/// n outside [lo, lo + gaps.size()).
struct CellAtlas {
  Vertex v = Vertex::infinity();
  long long lo = 0;
  std::vector<double> gaps;
  double shift = 0.0;  // M = p_{s,v}(e_{-1}+)

  double gap(long long n) const;
  /// phi(n) with phi(0) = 0 and phi(n+1) - phi(n) = gap(n).
  double position(long long n) const;
};

/// Throws Error(kNotInP) if the fan of v is not balanced.
CellAtlas cell_atlas(const FanIndex<double>& s, const Vertex& v);

/// Sum of strip_l2 over strips n in [-window, window].
double cell_l2(const CellAtlas& atlas, long long window);

struct CellEstimate {
  Vertex v;
  double l2;
  double sup;
};

struct BeltramiEstimate {
  double sup_mu = 0.0;
  double l2_hyp = 0.0;
  std::vector<CellEstimate> cells;  // cells with a non-trivial strip, by vertex
  unsigned max_gen = 0;
};

/// Sums over all cells whose vertex has generation <= max_gen. Cells away
/// from the fans meeting the support have all gaps 1 and contribute nothing,
/// so the value is exact once max_gen covers the support's vertices.
/// Throws Error(kNotInP) unless s is finite balanced.
BeltramiEstimate extension_l2(const CoordFn& s, unsigned max_gen);

/// {"sup_mu", "l2_hyp", "cells": [{"vertex", "l2", "sup"}], "maxGen"}
std::string estimate_json(const BeltramiEstimate& est);

/// The extension f of the homeomorphism developed from a finite balanced
/// shear function, evaluated in the disk.
class QcExtension {
 public:
  explicit QcExtension(const CoordFn& s);

  /// f(z) for |z| < 1.
  Complex operator()(Complex z) const;
  /// Vertex of the cell containing z.
  Vertex cell_of(Complex z) const;
  const PiecewiseMobiusHomeo& boundary() const { return h_; }

 private:
  struct Located {
    Vertex v;
    Complex w;  // normalized half-plane coordinate in the cell of v
  };
  Located locate(Complex z) const;
  const CellAtlas& atlas(const Vertex& v) const;

  FanIndex<double> index_;
  PiecewiseMobiusHomeo h_;
  mutable std::mutex mu_;
  mutable std::map<Vertex, std::unique_ptr<CellAtlas>> atlases_;
};

}  // namespace fwp
