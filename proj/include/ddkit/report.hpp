// Copyright 2026 The ddkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Multi-document agreement reports and their text/TSV/JSON renderings.
//
// Text output rounds to two decimals; TSV and JSON carry full precision.

#ifndef DDKIT_REPORT_HPP_
#define DDKIT_REPORT_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ddkit/agreement.hpp"
#include "ddkit/annotation.hpp"

namespace ddkit {

enum class OutputFormat { kText, kTsv, kJson };

// Annotation sets grouped by document. Every document carries one set per
// coder, in the same coder order.
struct Corpus {
  std::vector<std::string> coders;
  std::vector<std::string> docs;
  std::vector<std::vector<AnnotationSet>> sets;  // sets[doc][coder]
};

// Groups sets by (doc, coder). Throws CoverageMismatch when a coder lacks a
// document the others have, Error on a duplicate (coder, doc) pair.
Corpus GroupByDocument(std::vector<AnnotationSet> sets);

// Row-wise concatenation; items are prefixed with "<doc>:" and the category
// universe is the union in first-seen order.
CodingMatrix StackMatrices(const std::vector<std::string> &docs,
                           const std::vector<CodingMatrix> &matrices);

ConfusionMatrix SumConfusions(const std::vector<ConfusionMatrix> &parts);

CodingMatrix BuildCorpusMatrix(const Corpus &corpus);
ConfusionMatrix BuildCorpusConfusion(const Corpus &corpus, std::size_t coder_a,
                                     std::size_t coder_b);

// "%.2f" of the full-precision value.
std::string Fixed2(double value);

struct AgreementSummary {
  std::size_t coders = 0;
  std::size_t docs = 0;
  std::vector<std::string> categories;
  KappaResult kappa;
  std::vector<PerClassRow> per_class;     // filled when requested
  std::vector<ConfusionMatrix> confusion;  // one per coder pair, when requested
  std::optional<EntityAgreement> entity;
  std::string entity_class;
};

std::string RenderAgreement(const AgreementSummary &summary,
                            OutputFormat format);

struct ClassDistribution {
  std::string coder;
  std::vector<std::string> categories;
  std::vector<std::int64_t> totals;
  std::int64_t items = 0;
};

ClassDistribution Distribution(const Corpus &corpus, std::size_t coder);

std::string RenderReport(const std::vector<ClassDistribution> &distributions,
                         const std::vector<ConfusionMatrix> &confusion,
                         OutputFormat format);

}  // namespace ddkit

#endif  // DDKIT_REPORT_HPP_
