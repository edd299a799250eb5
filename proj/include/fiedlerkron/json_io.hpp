// JSON (de)serialization for matrices, polynomials, pencils and views.
// Real entries are plain numbers; complex entries are [re, im] pairs.
#pragma once

#include "fiedlerkron/kronecker.hpp"
#include "fiedlerkron/tuples.hpp"

#include <json.hpp>

namespace fk {

using Json = nlohmann::ordered_json;

inline Json scalar_to_json(double v) { return Json(v); }
inline Json scalar_to_json(const Cplx& v) { return Json::array({v.real(), v.imag()}); }

inline void scalar_from_json(const Json& j, double& out) {
  if (j.is_array()) {
    require(j.size() == 2 && std::abs(j[1].get<double>()) == 0.0,
            "json: complex entry in a real-mode matrix");
    out = j[0].get<double>();
  } else {
    out = j.get<double>();
  }
}
inline void scalar_from_json(const Json& j, Cplx& out) {
  if (j.is_array()) {
    require(j.size() == 2, "json: complex entries are [re, im] pairs");
    out = Cplx(j[0].get<double>(), j[1].get<double>());
  } else {
    out = Cplx(j.get<double>(), 0.0);
  }
}

template <class S>
Json matrix_to_json(const DenseMatrix<S>& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(scalar_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class S>
DenseMatrix<S> matrix_from_json(const Json& j) {
  require(j.is_array() && !j.empty() && j[0].is_array(), "json: matrix must be a 2-d array");
  const Index rows = static_cast<Index>(j.size());
  const Index cols = static_cast<Index>(j[0].size());
  DenseMatrix<S> m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    require(static_cast<Index>(j[i].size()) == cols, "json: ragged matrix");
    for (Index c = 0; c < cols; ++c) {
      S v;
      scalar_from_json(j[i][c], v);
      m(i, c) = v;
    }
  }
  return m;
}

template <class S>
Json polynomial_to_json(const MatrixPolynomial<S>& p) {
  Json j;
  j["n"] = p.rows();
  j["m"] = p.cols();
  j["grade"] = p.grade();
  Json coeffs = Json::array();
  for (const auto& a : p.coeffs) coeffs.push_back(matrix_to_json(a));
  j["coeffs"] = std::move(coeffs);
  return j;
}

template <class S>
MatrixPolynomial<S> polynomial_from_json(const Json& j) {
  require(j.contains("coeffs") && j["coeffs"].is_array() && !j["coeffs"].empty(),
          "json: polynomial needs coeffs");
  std::vector<DenseMatrix<S>> coeffs;
  for (const auto& c : j["coeffs"]) coeffs.push_back(matrix_from_json<S>(c));
  MatrixPolynomial<S> p(std::move(coeffs));
  if (j.contains("grade"))
    require(j["grade"].get<Index>() == p.grade(), "json: grade disagrees with coeffs");
  if (j.contains("n")) require(j["n"].get<Index>() == p.rows(), "json: n mismatch");
  if (j.contains("m")) require(j["m"].get<Index>() == p.cols(), "json: m mismatch");
  return p;
}

template <class S>
Json pencil_to_json(const BlockPencil<S>& l) {
  Json j;
  j["n"] = l.block_size;
  j["gridRows"] = l.grid_rows();
  j["gridCols"] = l.grid_cols();
  j["B1"] = matrix_to_json(l.b1);
  j["B0"] = matrix_to_json(l.b0);
  return j;
}

template <class S>
BlockPencil<S> pencil_from_json(const Json& j) {
  require(j.contains("B1") && j.contains("B0") && j.contains("n"),
          "json: pencil needs n, B1, B0");
  return BlockPencil<S>(matrix_from_json<S>(j["B1"]), matrix_from_json<S>(j["B0"]),
                        j["n"].get<Index>());
}

template <class S>
Json view_to_json(const EbkView<S>& v) {
  Json j;
  j["p"] = v.p;
  j["q"] = v.q;
  j["n"] = v.n();
  j["permL"] = v.row_order;
  j["permR"] = v.col_order;
  j["M"] = pencil_to_json(v.body());
  j["K1"] = pencil_to_json(v.k1());
  j["K2"] = pencil_to_json(v.k2());
  j["factorB1"] = matrix_to_json(v.k1_factor());
  j["factorB2"] = matrix_to_json(v.k2_factor());
  j["minimalBasisFlags"] =
      Json::array({is_minimal_basis_wing(v.k1()), is_minimal_basis_wing(v.k2())});
  return j;
}

inline bool json_matrix_is_complex(const Json& rows) {
  for (const auto& row : rows)
    for (const auto& e : row)
      if (e.is_array() && std::abs(e[1].get<double>()) != 0.0) return true;
  return false;
}

}  // namespace fk
