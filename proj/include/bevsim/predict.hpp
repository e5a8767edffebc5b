// Copyright 2026 The bevsim Authors
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

#ifndef BEVSIM__PREDICT_HPP_
#define BEVSIM__PREDICT_HPP_

#include <array>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include "bevsim/dataset.hpp"
#include "bevsim/explorer.hpp"
#include "bevsim/grid.hpp"
#include "bevsim/transport.hpp"

namespace bevsim
{

struct PredictionResult
{
  SemanticGrid global_probs;  // independent per-class probabilities
  RealGrid area_prob;         // probability map for the query class
  ClassId query = ClassId::kBedroom;
};

/// Selects channel `query` of `probs` as the area map.
PredictionResult select_query(SemanticGrid probs, ClassId query);

/**
 * Maps an observation and a query room class to a completed global map and
 * a query heatmap. Implementations serialize their own calls.
 */
class Predictor
{
public:
  virtual ~Predictor() = default;

  /// Throws kInvalidArgument unless q is a room class (0-6).
  PredictionResult predict(const ObservationFrame & frame, ClassId q);
  virtual std::string_view name() const = 0;

protected:
  virtual PredictionResult do_predict(const ObservationFrame & frame, ClassId q) = 0;
};

/// Ground truth as the prediction.
class OraclePredictor : public Predictor
{
public:
  explicit OraclePredictor(LabelGrid gt)
  : gt_(std::move(gt)), onehot_(onehot_encode(gt_)) {}

  std::string_view name() const override {return "oracle";}

protected:
  PredictionResult do_predict(const ObservationFrame & frame, ClassId q) override;

private:
  LabelGrid gt_;
  SemanticGrid onehot_;
};

/// Every channel at a constant value (0.5 for the uniform baseline).
class ConstantPredictor : public Predictor
{
public:
  explicit ConstantPredictor(double value = 0.5);

  std::string_view name() const override {return "uniform";}

protected:
  PredictionResult do_predict(const ObservationFrame & frame, ClassId q) override;

private:
  double value_;
};

/// Global class frequencies on unexplored cells, observed one-hot on explored cells.
class FrequencyPriorPredictor : public Predictor
{
public:
  explicit FrequencyPriorPredictor(const std::array<double, kNumClasses> & frequencies);
  static FrequencyPriorPredictor from_census(const ClassCensus & census);

  const std::array<double, kNumClasses> & frequencies() const {return freq_;}
  std::string_view name() const override {return "frequency_prior";}

protected:
  PredictionResult do_predict(const ObservationFrame & frame, ClassId q) override;

private:
  std::array<double, kNumClasses> freq_;
};

/// SSP1 client; one connection, one request in flight.
class ExternalPredictor : public Predictor
{
public:
  /// Connects immediately; throws kTransport when the endpoint is unreachable.
  explicit ExternalPredictor(const Endpoint & endpoint);

  std::string_view name() const override {return "external";}

protected:
  PredictionResult do_predict(const ObservationFrame & frame, ClassId q) override;

private:
  std::mutex mutex_;
  Connection conn_;
};

enum class PredictorKind
{
  kNone,
  kOracle,
  kUniform,
  kFrequencyPrior,
  kExternal,
};

std::optional<PredictorKind> parse_predictor_kind(std::string_view name);
std::string_view predictor_kind_name(PredictorKind kind);

/// Everything a backend might need; only the relevant fields are read.
struct PredictorContext
{
  const LabelGrid * gt = nullptr;            // oracle
  std::optional<ClassCensus> census;          // frequency_prior
  std::optional<Endpoint> endpoint;           // external
};

/// nullptr for kNone. Throws kConfig when the context lacks what the kind needs.
std::unique_ptr<Predictor> make_predictor(PredictorKind kind, const PredictorContext & ctx);

}  // namespace bevsim

#endif  // BEVSIM__PREDICT_HPP_
