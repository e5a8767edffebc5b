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

#include "bevsim/predict.hpp"

#include "bevsim/ssp1.hpp"

namespace bevsim
{

PredictionResult select_query(SemanticGrid probs, ClassId query)
{
  PredictionResult out;
  out.area_prob = probs.channel(index_of(query));
  out.global_probs = std::move(probs);
  out.query = query;
  return out;
}

PredictionResult Predictor::predict(const ObservationFrame & frame, ClassId q)
{
  if (!is_query_class(q)) {
    fail(ErrorCode::kInvalidArgument, "query class must be in [0, 6], got " +
      std::to_string(index_of(q)));
  }
  return do_predict(frame, q);
}

PredictionResult OraclePredictor::do_predict(const ObservationFrame & frame, ClassId q)
{
  require_same_plane(frame.explored, gt_, "oracle frame");
  return select_query(onehot_, q);
}

ConstantPredictor::ConstantPredictor(double value)
: value_(value)
{
  if (!(value >= 0.0 && value <= 1.0)) {
    fail(ErrorCode::kInvalidArgument, "constant probability must lie in [0, 1]");
  }
}

PredictionResult ConstantPredictor::do_predict(const ObservationFrame & frame, ClassId q)
{
  return select_query(
    SemanticGrid(frame.explored.height(), frame.explored.width(), kNumClasses, value_), q);
}

FrequencyPriorPredictor::FrequencyPriorPredictor(const std::array<double, kNumClasses> & frequencies)
: freq_(frequencies)
{
  for (double f : freq_) {
    if (!(f >= 0.0 && f <= 1.0)) {
      fail(ErrorCode::kInvalidArgument, "class frequency must lie in [0, 1]");
    }
  }
}

FrequencyPriorPredictor FrequencyPriorPredictor::from_census(const ClassCensus & census)
{
  auto total = census.total();
  if (total == 0) {
    fail(ErrorCode::kInvalidArgument, "empty class census");
  }
  std::array<double, kNumClasses> freq{};
  for (int k = 0; k < kNumClasses; ++k) {
    freq[static_cast<std::size_t>(k)] =
      static_cast<double>(census.counts[static_cast<std::size_t>(k)]) / static_cast<double>(total);
  }
  return FrequencyPriorPredictor(freq);
}

PredictionResult FrequencyPriorPredictor::do_predict(const ObservationFrame & frame, ClassId q)
{
  const int h = frame.explored.height();
  const int w = frame.explored.width();
  SemanticGrid probs(h, w, kNumClasses);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      for (int k = 0; k < kNumClasses; ++k) {
        probs.at(r, c, k) = frame.explored.at(r, c) ? frame.local_semantics.at(r, c, k) :
          freq_[static_cast<std::size_t>(k)];
      }
    }
  }
  return select_query(std::move(probs), q);
}

ExternalPredictor::ExternalPredictor(const Endpoint & endpoint)
: conn_(Connection::connect(endpoint)) {}

PredictionResult ExternalPredictor::do_predict(const ObservationFrame & frame, ClassId q)
{
  std::lock_guard lock(mutex_);
  conn_.send_message(encode_request(frame, q));
  SemanticGrid probs = decode_response(conn_.receive_message());
  if (!probs.same_plane(frame.explored)) {
    fail(ErrorCode::kProtocolShape, "reply is " + std::to_string(probs.height()) + "x" +
      std::to_string(probs.width()) + ", request was " + std::to_string(frame.explored.height()) +
      "x" + std::to_string(frame.explored.width()));
  }
  return select_query(std::move(probs), q);
}

std::optional<PredictorKind> parse_predictor_kind(std::string_view name)
{
  if (name == "none") {return PredictorKind::kNone;}
  if (name == "oracle") {return PredictorKind::kOracle;}
  if (name == "uniform") {return PredictorKind::kUniform;}
  if (name == "frequency_prior" || name == "frequency") {return PredictorKind::kFrequencyPrior;}
  if (name == "external") {return PredictorKind::kExternal;}
  return std::nullopt;
}

std::string_view predictor_kind_name(PredictorKind kind)
{
  switch (kind) {
    case PredictorKind::kNone: return "none";
    case PredictorKind::kOracle: return "oracle";
    case PredictorKind::kUniform: return "uniform";
    case PredictorKind::kFrequencyPrior: return "frequency_prior";
    case PredictorKind::kExternal: return "external";
  }
  return "none";
}

std::unique_ptr<Predictor> make_predictor(PredictorKind kind, const PredictorContext & ctx)
{
  switch (kind) {
    case PredictorKind::kNone:
      return nullptr;
    case PredictorKind::kOracle:
      if (!ctx.gt) {
        fail(ErrorCode::kConfig, "predictor: oracle needs ground truth");
      }
      return std::make_unique<OraclePredictor>(*ctx.gt);
    case PredictorKind::kUniform:
      return std::make_unique<ConstantPredictor>(0.5);
    case PredictorKind::kFrequencyPrior:
      if (!ctx.census) {
        fail(ErrorCode::kConfig, "predictor: frequency_prior needs a class census");
      }
      return std::make_unique<FrequencyPriorPredictor>(
        FrequencyPriorPredictor::from_census(*ctx.census));
    case PredictorKind::kExternal:
      if (!ctx.endpoint) {
        fail(ErrorCode::kConfig, "predictor: external needs an endpoint");
      }
      return std::make_unique<ExternalPredictor>(*ctx.endpoint);
  }
  fail(ErrorCode::kConfig, "predictor: unknown kind");
}

}  // namespace bevsim
