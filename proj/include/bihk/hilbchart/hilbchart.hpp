#pragma once

#include <span>
#include <utility>
#include <vector>

#include "json.hpp"

#include "bihk/bipoisson/bivector.hpp"

namespace bihk::hilbchart {

using bipoisson::PolyBivector;

// Built-in symplectic surfaces: C^2 with dz^du, and C x C* with dz^dp/p.
enum class SurfaceModel { plane, cstar };

// (q, p) with q monic of degree n and deg p < n, both stored with descending
// coefficients; q includes its leading 1.
struct TransversePoint {
    std::vector<Complex> q;
    std::vector<Complex> p;

    static TransversePoint make(std::vector<Complex> q, std::vector<Complex> p);
    std::size_t n() const { return p.size(); }
    // Coefficient chart: q_1..q_n then p_{n-1}..p_0.
    std::vector<Complex> coords() const;
    static TransversePoint from_coords(std::span<const Complex> c);
};

struct RootChartPoint {
    std::vector<Complex> roots;
    std::vector<Complex> values;
    std::size_t n() const { return roots.size(); }
    // Root chart order z1,u1,...,zn,un.
    std::vector<Complex> coords() const;
};

inline constexpr double kCollisionTol = 1e-7;

TransversePoint roots_to_coeffs(const RootChartPoint& r);
RootChartPoint coeffs_to_roots(const TransversePoint& t);

// Pi_1 = sum d/dz_i ^ d/du_i (plane) or sum u_i d/dz_i ^ d/du_i (cstar),
// Pi_2 = z_i times the same blocks.
std::pair<PolyBivector, PolyBivector> chart_bivectors(std::size_t n, SurfaceModel model = SurfaceModel::plane);

// d(coefficient chart) / d(root chart) at r.
CMatrix coefficient_jacobian(const RootChartPoint& r);

struct BivectorPair {
    CMatrix first;
    CMatrix second;
};
BivectorPair root_bivectors(const RootChartPoint& r, SurfaceModel model = SurfaceModel::plane);
BivectorPair pushforward_bivectors_qp(const TransversePoint& t, SurfaceModel model = SurfaceModel::plane);

// Numeric bivector field on the coefficient chart (which = 1 or 2).
bipoisson::BivectorField coefficient_bivector_field(int which, SurfaceModel model = SurfaceModel::plane);

// Coefficients of q below the leading 1.
std::vector<Complex> canonical_map(const TransversePoint& t);

TransversePoint random_transverse_point(Rng& rng, std::size_t n, double radius = 2.0, double min_separation = 0.3);

nlohmann::json to_json(const TransversePoint& t);
nlohmann::json to_json(const RootChartPoint& r);
TransversePoint transverse_from_json(const nlohmann::json& j);
RootChartPoint roots_from_json(const nlohmann::json& j);

}  // namespace bihk::hilbchart
