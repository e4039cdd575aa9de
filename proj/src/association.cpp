#include "bmf/association.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace bmf {

AssociationMatrix::AssociationMatrix(std::vector<std::string> drug_ids,
                                     std::vector<std::string> disease_ids,
                                     const std::vector<IdPair>& positives)
    : drug_ids_(std::move(drug_ids)), disease_ids_(std::move(disease_ids)) {
  const auto m = static_cast<Index>(drug_ids_.size());
  const auto n = static_cast<Index>(disease_ids_.size());
  if (m == 0 || n == 0) throw std::invalid_argument("association matrix: empty id list");

  rows_.resize(m);
  cols_.resize(n);
  for (const auto& [i, j] : positives) {
    if (i < 0 || i >= m || j < 0 || j >= n)
      throw std::invalid_argument("association matrix: pair index out of range");
    rows_[i].push_back(j);
    cols_[j].push_back(i);
  }
  for (auto& r : rows_) std::sort(r.begin(), r.end());
  for (auto& c : cols_) std::sort(c.begin(), c.end());
  for (const auto& r : rows_) {
    if (std::adjacent_find(r.begin(), r.end()) != r.end())
      throw std::invalid_argument("association matrix: duplicate pair");
    num_positives_ += r.size();
  }

  if (num_positives_ == 0)
    throw std::invalid_argument("association matrix: no positive pairs");
  if (num_positives_ == static_cast<std::size_t>(m) * static_cast<std::size_t>(n))
    throw std::invalid_argument("association matrix: fully dense matrix");

  std::set<std::string> seen_drugs(drug_ids_.begin(), drug_ids_.end());
  std::set<std::string> seen_diseases(disease_ids_.begin(), disease_ids_.end());
  if (seen_drugs.size() != drug_ids_.size() || seen_diseases.size() != disease_ids_.size())
    throw std::invalid_argument("association matrix: duplicate ids");

  drug_lookup_.reserve(drug_ids_.size());
  for (Index i = 0; i < m; ++i) drug_lookup_.emplace(drug_ids_[i], i);
}

double AssociationMatrix::sparsity() const {
  const double cells = static_cast<double>(num_drugs()) * num_diseases();
  return 1.0 - static_cast<double>(num_positives_) / cells;
}

bool AssociationMatrix::has(Index drug, Index disease) const {
  const auto& r = row(drug);
  return std::binary_search(r.begin(), r.end(), disease);
}

const std::vector<Index>& AssociationMatrix::row(Index drug) const {
  if (drug < 0 || drug >= num_drugs())
    throw std::out_of_range("drug index out of range");
  return rows_[drug];
}

const std::vector<Index>& AssociationMatrix::col(Index disease) const {
  if (disease < 0 || disease >= num_diseases())
    throw std::out_of_range("disease index out of range");
  return cols_[disease];
}

Index AssociationMatrix::drug_index(const std::string& id) const {
  const auto it = drug_lookup_.find(id);
  return it == drug_lookup_.end() ? Index{-1} : it->second;
}

std::vector<IdPair> AssociationMatrix::positives() const {
  std::vector<IdPair> out;
  out.reserve(num_positives_);
  for (Index i = 0; i < num_drugs(); ++i)
    for (Index j : rows_[i]) out.emplace_back(i, j);
  return out;
}

AssociationMatrix load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge list: " + path);

  std::vector<std::string> drug_ids, disease_ids;
  std::unordered_map<std::string, Index> drug_idx, disease_idx;
  std::set<IdPair> seen;
  std::vector<IdPair> pairs;
  std::size_t duplicates = 0;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;

    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size() ||
        line.find('\t', tab + 1) != std::string::npos) {
      std::ostringstream msg;
      msg << path << ":" << line_no
          << ": malformed line, expected `drug_id<TAB>disease_id`";
      throw std::runtime_error(msg.str());
    }
    const std::string drug = line.substr(0, tab);
    const std::string disease = line.substr(tab + 1);

    auto [dit, dnew] = drug_idx.try_emplace(drug, static_cast<Index>(drug_ids.size()));
    if (dnew) drug_ids.push_back(drug);
    auto [sit, snew] = disease_idx.try_emplace(disease, static_cast<Index>(disease_ids.size()));
    if (snew) disease_ids.push_back(disease);

    const IdPair p{dit->second, sit->second};
    if (!seen.insert(p).second) {
      ++duplicates;
      continue;
    }
    pairs.push_back(p);
  }

  if (pairs.empty())
    throw std::runtime_error("edge list has no associations: " + path);
  if (duplicates > 0)
    std::cerr << "warning: " << path << ": " << duplicates
              << " duplicate pair(s) ignored\n";

  return AssociationMatrix(std::move(drug_ids), std::move(disease_ids), pairs);
}

AssociationMatrix prune_empty(const AssociationMatrix& mat) {
  std::vector<Index> drug_map(mat.num_drugs(), -1);
  std::vector<Index> disease_map(mat.num_diseases(), -1);
  std::vector<std::string> drug_ids, disease_ids;

  for (Index i = 0; i < mat.num_drugs(); ++i) {
    if (mat.row(i).empty()) continue;
    drug_map[i] = static_cast<Index>(drug_ids.size());
    drug_ids.push_back(mat.drug_ids()[i]);
  }
  for (Index j = 0; j < mat.num_diseases(); ++j) {
    if (mat.col(j).empty()) continue;
    disease_map[j] = static_cast<Index>(disease_ids.size());
    disease_ids.push_back(mat.disease_ids()[j]);
  }
  if (drug_ids.empty() || disease_ids.empty())
    throw std::runtime_error("prune_empty: all rows or columns are empty");

  std::vector<IdPair> pairs;
  pairs.reserve(mat.num_positives());
  for (const auto& [i, j] : mat.positives())
    pairs.emplace_back(drug_map[i], disease_map[j]);

  return AssociationMatrix(std::move(drug_ids), std::move(disease_ids), pairs);
}

void write_edge_list(const AssociationMatrix& mat, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write edge list: " + path);
  for (const auto& [i, j] : mat.positives())
    out << mat.drug_ids()[i] << '\t' << mat.disease_ids()[j] << '\n';
  if (!out) throw std::runtime_error("error writing edge list: " + path);
}

}  // namespace bmf
