#pragma once

// Data-parallel inner loops. Every kernel in `kernels` has a serial
// counterpart in `reference` that is written for clarity rather than speed;
// tests check the pair against each other and bench/ times them.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "courant/raster.hpp"

namespace courant {

/// 5-point (7-point in 3-D) Dirichlet Laplacian restricted to the inside
/// cells of a raster. The Dirichlet condition sits on the cell faces: an
/// outside neighbour acts as the ghost value -u, which adds 2/h^2 to the
/// diagonal instead of 1/h^2.
struct LaplacianStencil {
  std::vector<std::size_t> cell;      // grid index of unknown r
  std::vector<std::int64_t> unknown;  // unknown index of grid cell, -1 outside
  std::vector<std::int64_t> nbr;      // 2m entries per unknown, -1 outside
  std::vector<double> diag;           // diagonal entry per unknown
  int neighbours = 4;
  double inv_h2 = 1.0;

  std::size_t size() const { return cell.size(); }
};

LaplacianStencil make_laplacian_stencil(const RasterDomain& domain);

namespace kernels {

/// Squared distance, in units of h^2, from each cell centre to the closed
/// complement of the set (zero on outside cells). Separable exact transform:
/// one lower-envelope pass per axis.
std::vector<double> boundary_distance_sq(const RasterDomain& domain);

/// y = A x for every column of x.
void apply_laplacian(const LaplacianStencil& op, const Eigen::MatrixXd& x, Eigen::MatrixXd& y);

/// #{k in N^m (k_i >= 1) : |k|^2 < radius_sq}.
std::uint64_t count_lattice_points(int m, double radius_sq);

/// Adds one to every cell whose centre lies in a box; returns the number of
/// cells that ended above one.
std::size_t paint_boxes(const GridFrame& frame, std::span<const Box> boxes, std::vector<std::uint8_t>& mask);

}  // namespace kernels

namespace reference {

/// Brute force over every outside cell face-adjacent to the set.
std::vector<double> boundary_distance_sq(const RasterDomain& domain);

/// Assembled sparse matrix of the same operator as LaplacianStencil.
Eigen::SparseMatrix<double> assemble_laplacian(const RasterDomain& domain);

void apply_laplacian(const Eigen::SparseMatrix<double>& a, const Eigen::MatrixXd& x, Eigen::MatrixXd& y);

/// Enumerates the box [1, floor(sqrt(radius_sq))]^m one point at a time.
std::uint64_t count_lattice_points(int m, double radius_sq);

std::size_t paint_boxes(const GridFrame& frame, std::span<const Box> boxes, std::vector<std::uint8_t>& mask);

}  // namespace reference

}  // namespace courant
