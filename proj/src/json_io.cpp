#include "freespec/json_io.hpp"

namespace freespec::json_io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::kInvalidTuple, what); }

Complex entry_from_json(const Json& e) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 1 && e[0].is_number()) return {e[0].get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
    return {e[0].get<double>(), e[1].get<double>()};
  bad("matrix entry must be a number, [re] or [re, im]");
}

}  // namespace

Json matrix_to_json(const CMatrix& m, Field f) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (f == Field::kReal) {
        row.push_back(Json::array({m(r, c).real() + 0.0}));
      } else {
        row.push_back(Json::array({m(r, c).real() + 0.0, m(r, c).imag() + 0.0}));
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const Json& j) {
  if (!j.is_array()) bad("matrix must be an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (rows == 0) return CMatrix(0, 0);
  if (!j[0].is_array()) bad("matrix rows must be arrays");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  CMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) bad("ragged matrix rows");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = entry_from_json(row[static_cast<size_t>(c)]);
  }
  return m;
}

Json tuple_to_json(const MatrixTuple& x) {
  Json mats = Json::array();
  for (const auto& m : x.entries()) mats.push_back(matrix_to_json(m, x.field()));
  return Json{{"g", x.g()}, {"n", x.n()}, {"field", to_string(x.field())}, {"matrices", mats}};
}

MatrixTuple tuple_from_json(const Json& j) {
  if (!j.is_object()) bad("tuple must be a JSON object");
  for (const char* key : {"g", "n", "field", "matrices"})
    if (!j.contains(key)) bad(std::string("tuple is missing '") + key + "'");
  if (!j["g"].is_number_integer() || !j["n"].is_number_integer()) bad("g and n must be integers");
  const int g = j["g"].get<int>();
  const int n = j["n"].get<int>();
  if (!j["field"].is_string()) bad("field must be a string");
  const Field f = field_from_string(j["field"].get<std::string>());
  const auto& mats = j["matrices"];
  if (!mats.is_array() || static_cast<int>(mats.size()) != g) bad("matrices must hold g entries");
  std::vector<CMatrix> entries;
  for (const auto& mj : mats) {
    CMatrix m = mj.empty() ? CMatrix(0, 0) : matrix_from_json(mj);
    if (m.rows() != n || m.cols() != n) bad("entry is not " + std::to_string(n) + " x " + std::to_string(n));
    entries.push_back(std::move(m));
  }
  return MatrixTuple(g, n, std::move(entries), f);
}

Json pencil_to_json(const LinearPencil& a) { return Json{{"A", tuple_to_json(a.coefficients())}}; }

LinearPencil pencil_from_json(const Json& j) {
  if (j.is_object() && j.contains("A")) return LinearPencil(tuple_from_json(j["A"]));
  return LinearPencil(tuple_from_json(j));
}

Json verdict_to_json(const MembershipVerdict& v) {
  return Json{{"status", to_string(v.status)}, {"min_eig", v.min_eigenvalue}, {"kernel_dim", v.kernel_dim}};
}

Json report_to_json(const ExtremeReport& r) {
  return Json{{"classical", r.classical},
              {"matrix", r.matrix},
              {"free", r.free},
              {"irreducible", r.irreducible},
              {"kernel_dim", r.kernel_dim},
              {"dilation_dim", r.dilation_dim},
              {"residuals",
               {{"classical", r.residuals.classical},
                {"matrix", r.residuals.matrix},
                {"free", r.residuals.free},
                {"commutant", r.residuals.commutant}}}};
}

Json decomposition_to_json(const Decomposition& d) {
  Json summands = Json::array();
  Json gammas = Json::array();
  for (size_t i = 0; i < d.summands.size(); ++i) {
    summands.push_back(tuple_to_json(d.summands[i]));
    gammas.push_back(matrix_to_json(d.gammas[i], d.summands[i].field()));
  }
  return Json{{"summands", summands},
              {"gammas", gammas},
              {"total_size", d.total_size},
              {"steps", d.steps},
              {"residual", d.residual}};
}

Json combination_to_json(const MatrixConvexCombination& c) {
  Json terms = Json::array();
  for (const auto& t : c.terms) {
    const bool real_gamma = t.gamma.imag().size() == 0 || t.gamma.imag().cwiseAbs().maxCoeff() == 0.0;
    const Field f = (real_gamma && t.point.field() == Field::kReal) ? Field::kReal : Field::kComplex;
    terms.push_back(Json{{"gamma", matrix_to_json(t.gamma, f)}, {"point", tuple_to_json(t.point)}});
  }
  return Json{{"target_dim", c.target_dim}, {"terms", terms}};
}

Json search_report_to_json(const oracles::SearchReport& r, Field f) {
  Json j{{"found", r.found},
         {"trials", r.trials},
         {"best_violation", std::isfinite(r.best_violation) ? Json(r.best_violation) : Json(nullptr)},
         {"evidence_only", !r.found},
         {"kind", r.kind}};
  if (r.dilation) {
    Json psi = Json::array();
    for (Eigen::Index i = 0; i < r.dilation->psi.size(); ++i) psi.push_back(r.dilation->psi(i));
    j["witness"] = Json{{"beta", matrix_to_json(r.dilation->beta, f)},
                        {"psi", psi},
                        {"alpha", r.dilation->alpha},
                        {"min_eig", r.dilation->min_eigenvalue}};
  } else if (r.combination) {
    j["witness"] = combination_to_json(*r.combination);
  }
  return j;
}

std::string dump(const Json& j) { return j.dump(); }

}  // namespace freespec::json_io
