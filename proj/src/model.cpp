#include "bmf/model.hpp"

#include <cmath>
#include <stdexcept>

#include "bmf/rng.hpp"

namespace bmf {

namespace {

Vec activate(const Vec& z, Activation a) {
  if (a == Activation::kRelu) return z.cwiseMax(0.0);
  Vec out(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) out[i] = sigmoid(z[i]);
  return out;
}

// Indices of the first-layer rows the drug input touches: the behavior row
// R_{i*}, or {i} in one-hot mode. `skip` removes the target disease when
// masking is on.
std::vector<Index> drug_input_rows(const Hyperparams& hp,
                                   const AssociationMatrix& mat, Index drug,
                                   Index skip) {
  if (hp.input_mode == InputMode::kOneHot) return {drug};
  const auto& r = mat.row(drug);
  std::vector<Index> out;
  out.reserve(r.size());
  for (Index j : r)
    if (j != skip) out.push_back(j);
  return out;
}

std::vector<Index> disease_input_rows(const Hyperparams& hp,
                                      const AssociationMatrix& mat,
                                      Index disease, Index skip) {
  if (hp.input_mode == InputMode::kOneHot) return {disease};
  const auto& c = mat.col(disease);
  std::vector<Index> out;
  out.reserve(c.size());
  for (Index i : c)
    if (i != skip) out.push_back(i);
  return out;
}

Vec preactivation(const Mat& weights, const Vec& bias,
                  const std::vector<Index>& input_rows) {
  Vec z = bias;
  for (Index r : input_rows) z += weights.row(r).transpose();
  return z;
}

void fill_glorot(Mat& w, Index fan_in, Index fan_out, Rng& rng) {
  const double limit = std::sqrt(6.0 / (static_cast<double>(fan_in) + fan_out));
  for (Eigen::Index r = 0; r < w.rows(); ++r)
    for (Eigen::Index c = 0; c < w.cols(); ++c)
      w(r, c) = uniform_real(rng, -limit, limit);
}

}  // namespace

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

void Hyperparams::validate() const {
  if (latent_dim < 1) throw std::invalid_argument("latent_dim must be >= 1");
  if (neighbor_cap < 0) throw std::invalid_argument("neighbor_cap must be >= 0");
  if (!(fusion_weight >= 0.0 && fusion_weight <= 1.0))
    throw std::invalid_argument("fusion_weight must lie in [0,1]");
}

bool ModelParams::all_finite() const {
  return W1.allFinite() && b1.allFinite() && V1.allFinite() &&
         b2.allFinite() && w2.allFinite() && std::isfinite(b3);
}

ModelParams init_params(const Hyperparams& hp, Index m, Index n,
                        std::uint64_t seed) {
  hp.validate();
  if (m < 1 || n < 1) throw std::invalid_argument("init_params: empty matrix");

  const Index h = hp.latent_dim;
  const Index in1 = hp.input_mode == InputMode::kBehavior ? n : m;
  const Index in2 = hp.input_mode == InputMode::kBehavior ? m : n;

  ModelParams p;
  p.W1.resize(in1, h);
  p.V1.resize(in2, h);
  p.b1 = Vec::Zero(h);
  p.b2 = Vec::Zero(h);
  p.w2.resize(h);
  p.b3 = 0.0;

  Rng rng(derive_seed(seed, 0x696e6974 /* "init" */));
  fill_glorot(p.W1, in1, h, rng);
  fill_glorot(p.V1, in2, h, rng);
  const double limit = std::sqrt(6.0 / (static_cast<double>(h) + 1));
  for (Eigen::Index i = 0; i < h; ++i) p.w2[i] = uniform_real(rng, -limit, limit);
  return p;
}

Vec drug_latent(const ModelParams& params, const Hyperparams& hp,
                const AssociationMatrix& mat, Index drug) {
  if (drug < 0 || drug >= mat.num_drugs())
    throw std::out_of_range("drug_latent: index out of range");
  const auto rows = drug_input_rows(hp, mat, drug, -1);
  return activate(preactivation(params.W1, params.b1, rows), hp.activation);
}

Vec disease_latent(const ModelParams& params, const Hyperparams& hp,
                   const AssociationMatrix& mat, Index disease) {
  if (disease < 0 || disease >= mat.num_diseases())
    throw std::out_of_range("disease_latent: index out of range");
  const auto rows = disease_input_rows(hp, mat, disease, -1);
  return activate(preactivation(params.V1, params.b2, rows), hp.activation);
}

std::vector<Index> neighbor_set(const AssociationMatrix& mat, Index drug,
                                Index disease, int cap) {
  if (drug < 0 || drug >= mat.num_drugs() || disease < 0 ||
      disease >= mat.num_diseases())
    throw std::out_of_range("neighbor_set: index out of range");
  std::vector<Index> out;
  if (cap <= 0) return out;
  for (Index t : mat.col(disease)) {
    if (t == drug) continue;
    out.push_back(t);
    if (static_cast<int>(out.size()) == cap) break;
  }
  return out;
}

ForwardTrace forward(const ModelParams& params, const Hyperparams& hp,
                     const AssociationMatrix& mat, Index drug, Index disease) {
  if (drug < 0 || drug >= mat.num_drugs() || disease < 0 ||
      disease >= mat.num_diseases())
    throw std::out_of_range("forward: index out of range");

  const bool mask = hp.mask_target && hp.input_mode == InputMode::kBehavior &&
                    mat.has(drug, disease);

  ForwardTrace t;
  t.drug = drug;
  t.disease = disease;

  t.drug_inputs = drug_input_rows(hp, mat, drug, mask ? disease : Index{-1});
  t.z_d = preactivation(params.W1, params.b1, t.drug_inputs);
  t.d = activate(t.z_d, hp.activation);

  t.disease_inputs = disease_input_rows(hp, mat, disease, mask ? drug : Index{-1});
  t.z_s = preactivation(params.V1, params.b2, t.disease_inputs);
  t.s = activate(t.z_s, hp.activation);

  t.neighbors = neighbor_set(mat, drug, disease, hp.neighbor_cap);
  const double g = hp.fusion_weight;
  if (t.neighbors.empty()) {
    t.o = Vec::Zero(hp.latent_dim);
    t.h = t.d;
  } else {
    Vec sum = Vec::Zero(hp.latent_dim);
    for (Index nb : t.neighbors) {
      std::vector<Index> rows = drug_input_rows(hp, mat, nb, -1);
      Vec z = preactivation(params.W1, params.b1, rows);
      Vec dlat = activate(z, hp.activation);
      sum += dlat;
      t.neighbor_z.push_back(std::move(z));
      t.neighbor_d.push_back(std::move(dlat));
    }
    t.o = sum / static_cast<double>(t.neighbors.size());
    t.h = g * t.d + (1.0 - g) * t.o;
  }

  t.logit = params.w2.dot(t.h.cwiseProduct(t.s)) + params.b3;
  t.score = sigmoid(t.logit);
  return t;
}

ScoreMatrix score_all(const ModelParams& params, const Hyperparams& hp,
                      const AssociationMatrix& mat) {
  const Index m = mat.num_drugs();
  const Index n = mat.num_diseases();
  const double g = hp.fusion_weight;

  std::vector<Vec> d(m), s(n);
  for (Index i = 0; i < m; ++i) d[i] = drug_latent(params, hp, mat, i);
  for (Index j = 0; j < n; ++j) s[j] = disease_latent(params, hp, mat, j);

  ScoreMatrix scores(m, n);
  for (Index j = 0; j < n; ++j) {
    const auto& col = mat.col(j);
    for (Index i = 0; i < m; ++i) {
      // Same neighbor walk as forward(): ascending, skip i, stop at the cap.
      Vec sum = Vec::Zero(hp.latent_dim);
      int taken = 0;
      if (hp.neighbor_cap > 0) {
        for (Index t : col) {
          if (t == i) continue;
          sum += d[t];
          if (++taken == hp.neighbor_cap) break;
        }
      }
      double logit;
      if (taken == 0) {
        logit = params.w2.dot(d[i].cwiseProduct(s[j])) + params.b3;
      } else {
        const Vec o = sum / static_cast<double>(taken);
        const Vec h = g * d[i] + (1.0 - g) * o;
        logit = params.w2.dot(h.cwiseProduct(s[j])) + params.b3;
      }
      scores(i, j) = sigmoid(logit);
    }
  }

  // Target masking changes the inputs of known-positive pairs only; those
  // pairs fall outside the evaluation universe but are recomputed exactly.
  if (hp.mask_target && hp.input_mode == InputMode::kBehavior) {
    for (const auto& [i, j] : mat.positives())
      scores(i, j) = forward(params, hp, mat, i, j).score;
  }
  return scores;
}

const char* to_string(Activation a) {
  return a == Activation::kRelu ? "relu" : "sigmoid";
}

const char* to_string(InputMode m) {
  return m == InputMode::kBehavior ? "behavior" : "one_hot";
}

Activation activation_from_string(const std::string& s) {
  if (s == "relu") return Activation::kRelu;
  if (s == "sigmoid") return Activation::kSigmoid;
  throw std::invalid_argument("unknown activation: " + s);
}

InputMode input_mode_from_string(const std::string& s) {
  if (s == "behavior") return InputMode::kBehavior;
  if (s == "one_hot") return InputMode::kOneHot;
  throw std::invalid_argument("unknown input mode: " + s);
}

}  // namespace bmf
