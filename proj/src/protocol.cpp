// Copyright 2026 The projunit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "projunit/protocol.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <string>

#include "projunit/error.hpp"
#include "projunit/privunitg.hpp"
#include "projunit/simd.hpp"
#include "projunit/wire_io.hpp"

namespace projunit {
namespace {

using Clock = std::chrono::steady_clock;

void RequireUnit(std::span<const double> v) {
  Require(!v.empty(), ErrorCode::kDimension, "client input is empty");
  const double norm = std::sqrt(simd::Active().dot(v.data(), v.data(), v.size()));
  Require(std::fabs(norm - 1.0) <= 1e-6, ErrorCode::kDomain, "client input must be unit norm");
}

std::uint32_t Dim(std::span<const double> v) {
  Require(v.size() <= 0xffffffffu, ErrorCode::kDimension, "input dimension exceeds 32 bits");
  return static_cast<std::uint32_t>(v.size());
}

std::uint32_t TransformDim(Ensemble ensemble, std::uint32_t d) {
  return IsHadamardEnsemble(ensemble) ? NextPowerOfTwo(d) : d;
}

Seed128 TransformSeed(const Seed128& seed, std::uint64_t attempt) {
  return DeriveSeed(seed, 0, attempt);
}

Seed128 RandomizerSeed(const Seed128& seed) { return DeriveSeed(seed, 1); }

std::vector<double> Padded(std::span<const double> v, Ensemble ensemble) {
  if (IsHadamardEnsemble(ensemble)) return PadToPowerOfTwo(v);
  return {v.begin(), v.end()};
}

double Norm(std::span<const double> x) {
  return std::sqrt(simd::Active().dot(x.data(), x.data(), x.size()));
}

struct Projection {
  TransformSpec spec;
  std::vector<double> vp;
};

// Samples W and projects, resampling once if W v vanishes.
template <typename MakeSpecFn>
Projection ProjectWithRetry(std::span<const double> input, const Seed128& seed,
                            MakeSpecFn make_spec) {
  for (std::uint64_t attempt = 0; attempt < 2; ++attempt) {
    TransformSpec spec = make_spec(TransformSeed(seed, attempt));
    std::vector<double> vp = Realize(spec).Apply(input);
    if (Norm(vp) > 0.0) return {std::move(spec), std::move(vp)};
  }
  Fail(ErrorCode::kDegenerateProjection, "projection of the input is zero after one resample");
}

std::vector<double> Privatize(std::span<const double> u, double eps, const Seed128& seed,
                              const ClientOptions& options) {
  if (options.noiseless) return {u.begin(), u.end()};
  Require(eps > 0.0, ErrorCode::kConfiguration, "eps must be positive");
  return Randomize(u, CachedParams(eps, static_cast<std::uint32_t>(u.size())),
                   RandomizerSeed(seed));
}

std::vector<float> ToFloat(std::span<const double> x, double factor = 1.0) {
  std::vector<float> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = static_cast<float>(factor * x[i]);
  return out;
}

std::vector<double> ToDouble(std::span<const float> x) { return {x.begin(), x.end()}; }

void Normalize(std::vector<double>& x) {
  const double norm = Norm(x);
  for (double& value : x) value /= norm;
}

Ensemble VariantEnsemble(const ClientMessage& m) {
  switch (m.variant) {
    case Variant::kProjUnitRot:
    case Variant::kUnbiasedRot:
      return Ensemble::kRotation;
    case Variant::kProjUnitGauss:
      return Ensemble::kGaussian;
    case Variant::kCorrelated:
      return Ensemble::kCorrelatedSrht;
    case Variant::kProjUnitSrht:
      return Ensemble::kSrht;
    case Variant::kNearlyUnbiasedSrht:
      return (m.flags & kFlagSharedDiagonal) ? Ensemble::kCorrelatedSrht : Ensemble::kSrht;
    case Variant::kDirectPrivUnitG:
      break;
  }
  Fail(ErrorCode::kConfiguration, "variant has no transform");
}

void RequireUniform(std::span<const ClientMessage> messages) {
  Require(!messages.empty(), ErrorCode::kConfiguration, "server needs at least one message");
  const ClientMessage& first = messages.front();
  for (const ClientMessage& m : messages) {
    Require(m.variant == first.variant, ErrorCode::kMismatch, "messages mix protocol variants");
    Require(m.d == first.d && m.k == first.k, ErrorCode::kDimension,
            "messages disagree on (d, k)");
    Require(m.payload.size() == PayloadLength(m.variant, m.d, m.k), ErrorCode::kDimension,
            "payload length does not match the variant");
  }
}

std::uint64_t TotalBits(std::span<const ClientMessage> messages) {
  std::uint64_t bits = 0;
  for (const ClientMessage& m : messages) bits += BitCost(m);
  return bits;
}

ServerEstimate Finish(std::vector<double> acc, std::span<const ClientMessage> messages,
                      Clock::time_point start) {
  const std::size_t n = messages.size();
  acc.resize(messages.front().d);
  simd::Active().scale(1.0 / static_cast<double>(n), acc.data(), acc.size());
  ServerEstimate out;
  out.mu_hat = std::move(acc);
  out.n = n;
  out.total_bits = TotalBits(messages);
  out.server_nanos =
      std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count();
  return out;
}

// Sum over messages of weight * W_i^T u_i when every W_i = sqrt(d/k) S_i H D_g
// shares one of the group diagonals: scatter S_i^T u_i per group, then one
// H and D per group.
std::vector<double> SharedDiagonalSum(std::span<const ClientMessage> messages,
                                      const CorrelatedConfig& config, std::size_t payload_used,
                                      double weight) {
  Require(config.groups >= 1, ErrorCode::kConfiguration, "need at least one group");
  const std::uint32_t d = NextPowerOfTwo(messages.front().d);
  const std::uint32_t k = messages.front().k;
  std::vector<std::uint64_t> digests(config.groups);
  for (std::uint32_t g = 0; g < config.groups; ++g) {
    digests[g] = SeedDigest(GroupSharedSeed(config, g));
  }
  std::vector<std::vector<double>> scattered(config.groups);
  for (const ClientMessage& m : messages) {
    const auto it = std::find(digests.begin(), digests.end(), m.seed_digest);
    Require(it != digests.end(), ErrorCode::kMismatch,
            "message seed digest does not match the shared diagonal");
    const TransformSpec spec = DecodeTransform(m.transform_encoding);
    Require(spec.ensemble == Ensemble::kCorrelatedSrht && spec.d == d && spec.k == k,
            ErrorCode::kMismatch, "transform does not match the correlated configuration");
    std::vector<double>& acc = scattered[it - digests.begin()];
    if (acc.empty()) acc.assign(d, 0.0);
    const std::vector<std::uint32_t>& rows = *spec.indices;
    for (std::size_t j = 0; j < payload_used; ++j) acc[rows[j]] += m.payload[j];
  }
  const double scale = weight * std::sqrt(static_cast<double>(d) / static_cast<double>(k));
  std::vector<double> total(d, 0.0);
  for (std::uint32_t g = 0; g < config.groups; ++g) {
    std::vector<double>& acc = scattered[g];
    if (acc.empty()) continue;
    FwhtInPlace(acc);
    const std::vector<double> signs = RademacherSigns(d, GroupSharedSeed(config, g));
    for (std::uint32_t i = 0; i < d; ++i) total[i] += scale * signs[i] * acc[i];
  }
  return total;
}

}  // namespace

const char* VariantName(Variant variant) {
  switch (variant) {
    case Variant::kProjUnitRot:
      return "rot";
    case Variant::kProjUnitSrht:
      return "srht";
    case Variant::kProjUnitGauss:
      return "gauss";
    case Variant::kCorrelated:
      return "corr";
    case Variant::kUnbiasedRot:
      return "unbiased-rot";
    case Variant::kNearlyUnbiasedSrht:
      return "nearly-unbiased-srht";
    case Variant::kDirectPrivUnitG:
      return "direct";
  }
  return "unknown";
}

std::size_t PayloadLength(Variant variant, std::uint32_t d, std::uint32_t k) {
  switch (variant) {
    case Variant::kDirectPrivUnitG:
      return d;
    case Variant::kNearlyUnbiasedSrht:
      return std::size_t{k} + 1;
    default:
      return k;
  }
}

std::uint32_t CorrelatedGroup(const CorrelatedConfig& config, const Seed128& client_seed) {
  Require(config.groups >= 1, ErrorCode::kConfiguration, "need at least one group");
  if (config.groups == 1) return 0;
  return static_cast<std::uint32_t>(DeriveSeed(client_seed, 2).lo % config.groups);
}

Seed128 GroupSharedSeed(const CorrelatedConfig& config, std::uint32_t group) {
  Require(group < config.groups, ErrorCode::kConfiguration, "group index out of range");
  if (config.groups == 1) return config.shared_seed;
  return DeriveSeed(config.shared_seed, group);
}

Seed128 DeriveClientSeed(const Seed128& master, std::uint64_t client_index,
                         std::uint64_t round) {
  return DeriveSeed(master, client_index, round);
}

double UnbiasedRotationFactor(std::uint32_t d, std::uint32_t k) {
  Require(k >= 1 && k <= d, ErrorCode::kDimension, "need 1 <= k <= d");
  if (k == d) return 1.0;
  const double dd = d;
  const double kk = k;
  return std::exp(0.5 * (std::log(kk) - std::log(dd)) + std::lgamma((dd + 1) / 2) +
                  std::lgamma(kk / 2) - std::lgamma((kk + 1) / 2) - std::lgamma(dd / 2));
}

double CompletionConstant(std::uint32_t k, double delta) {
  Require(k >= 1, ErrorCode::kDimension, "k must be positive");
  Require(delta > 0.0 && delta < 1.0, ErrorCode::kConfiguration, "delta must be in (0, 1)");
  const double log_term = std::log(k / delta);
  return static_cast<float>(1.0 + 2.0 * std::sqrt(log_term * log_term / k));
}

double DefaultCompletionDelta(std::uint32_t k, std::uint64_t n, std::uint32_t d) {
  Require(n >= 1 && d >= 1, ErrorCode::kDimension, "need n >= 1 and d >= 1");
  return static_cast<double>(k) / (static_cast<double>(n) * static_cast<double>(n) * d);
}

ClientMessage ProjUnitClient(std::span<const double> v, Ensemble ensemble, std::uint32_t k,
                             double eps, const Seed128& seed, const ClientOptions& options) {
  RequireUnit(v);
  Require(ensemble != Ensemble::kCorrelatedSrht, ErrorCode::kConfiguration,
          "use CorrelatedClient for the correlated ensemble");
  Require(options.encoding == EncodingMode::kSeed || IsHadamardEnsemble(ensemble),
          ErrorCode::kConfiguration, "explicit encodings exist only for SRHT");
  Require(options.encoding != EncodingMode::kIndicesOnly, ErrorCode::kConfiguration,
          "indices-only encoding is reserved for correlated clients");
  const std::uint32_t d = Dim(v);
  const std::vector<double> input = Padded(v, ensemble);
  Projection proj = ProjectWithRetry(input, seed, [&](const Seed128& s) {
    return MakeSpec(ensemble, TransformDim(ensemble, d), k, s);
  });
  Normalize(proj.vp);

  ClientMessage m;
  switch (ensemble) {
    case Ensemble::kRotation:
      m.variant = Variant::kProjUnitRot;
      break;
    case Ensemble::kSrht:
      m.variant = Variant::kProjUnitSrht;
      break;
    default:
      m.variant = Variant::kProjUnitGauss;
      break;
  }
  m.d = d;
  m.k = k;
  m.seed_digest = SeedDigest(proj.spec.seed);
  m.transform_encoding = EncodeTransform(proj.spec, options.encoding);
  m.payload = ToFloat(Privatize(proj.vp, eps, seed, options));
  return m;
}

ClientMessage CorrelatedClient(std::span<const double> v, const CorrelatedConfig& config,
                               std::uint32_t k, double eps, const Seed128& seed,
                               const ClientOptions& options) {
  RequireUnit(v);
  const std::uint32_t d = Dim(v);
  const Seed128 shared = GroupSharedSeed(config, CorrelatedGroup(config, seed));
  const std::vector<double> input = PadToPowerOfTwo(v);
  Projection proj = ProjectWithRetry(input, seed, [&](const Seed128& s) {
    return MakeSpec(Ensemble::kCorrelatedSrht, NextPowerOfTwo(d), k, s, shared);
  });
  Normalize(proj.vp);

  ClientMessage m;
  m.variant = Variant::kCorrelated;
  m.d = d;
  m.k = k;
  m.seed_digest = SeedDigest(shared);
  m.flags = kFlagSharedDiagonal;
  m.transform_encoding = EncodeTransform(proj.spec, EncodingMode::kIndicesOnly);
  m.payload = ToFloat(Privatize(proj.vp, eps, seed, options));
  return m;
}

ClientMessage UnbiasedRotationClient(std::span<const double> v, std::uint32_t k, double eps,
                                     const Seed128& seed, const ClientOptions& options) {
  Require(options.encoding == EncodingMode::kSeed, ErrorCode::kConfiguration,
          "rotations travel as seeds");
  ClientMessage m = ProjUnitClient(v, Ensemble::kRotation, k, eps, seed, options);
  const double c = UnbiasedRotationFactor(m.d, k);
  m.variant = Variant::kUnbiasedRot;
  for (float& x : m.payload) x = static_cast<float>(c * x);
  return m;
}

ClientMessage NearlyUnbiasedClient(std::span<const double> v, std::uint32_t k, double eps,
                                   double delta, const Seed128& seed,
                                   const CorrelatedConfig* config, const ClientOptions& options) {
  RequireUnit(v);
  const std::uint32_t d = Dim(v);
  const double c = CompletionConstant(k, delta);
  const std::uint32_t dp = NextPowerOfTwo(d);
  const std::vector<double> input = PadToPowerOfTwo(v);

  ClientMessage m;
  m.variant = Variant::kNearlyUnbiasedSrht;
  m.d = d;
  m.k = k;
  m.flags = kFlagHasC;
  m.c_value = static_cast<float>(c);

  TransformSpec spec;
  EncodingMode mode = options.encoding;
  if (config != nullptr) {
    const Seed128 shared = GroupSharedSeed(*config, CorrelatedGroup(*config, seed));
    spec = MakeSpec(Ensemble::kCorrelatedSrht, dp, k, TransformSeed(seed, 0), shared);
    mode = EncodingMode::kIndicesOnly;
    m.flags |= kFlagSharedDiagonal;
    m.seed_digest = SeedDigest(shared);
  } else {
    Require(mode != EncodingMode::kIndicesOnly, ErrorCode::kConfiguration,
            "indices-only encoding needs a shared diagonal");
    spec = MakeSpec(Ensemble::kSrht, dp, k, TransformSeed(seed, 0));
    m.seed_digest = SeedDigest(spec.seed);
  }
  const std::vector<double> vp = Realize(spec).Apply(input);

  // Complete the norm to sqrt(C) in one extra coordinate, or fall back to
  // plain normalization when the projection is longer than that.
  std::vector<double> u(std::size_t{k} + 1, 0.0);
  const double sq = simd::Active().dot(vp.data(), vp.data(), vp.size());
  if (sq <= c) {
    const double inv = 1.0 / std::sqrt(c);
    for (std::uint32_t j = 0; j < k; ++j) u[j] = vp[j] * inv;
    u[k] = std::sqrt(c - sq) * inv;
  } else {
    const double inv = 1.0 / std::sqrt(sq);
    for (std::uint32_t j = 0; j < k; ++j) u[j] = vp[j] * inv;
  }
  m.transform_encoding = EncodeTransform(spec, mode);
  m.payload = ToFloat(Privatize(u, eps, seed, options));
  return m;
}

ClientMessage DirectPrivUnitGClient(std::span<const double> v, double eps, const Seed128& seed,
                                    const ClientOptions& options) {
  RequireUnit(v);
  ClientMessage m;
  m.variant = Variant::kDirectPrivUnitG;
  m.d = Dim(v);
  m.k = m.d;
  m.payload = ToFloat(Privatize(v, eps, seed, options));
  return m;
}

LinearTransform MessageTransform(const ClientMessage& message, const CorrelatedConfig* config) {
  const Ensemble ensemble = VariantEnsemble(message);
  TransformSpec spec = DecodeTransform(message.transform_encoding);
  Require(spec.ensemble == ensemble, ErrorCode::kDecode,
          "transform ensemble does not match the variant");
  Require(spec.d == TransformDim(ensemble, message.d) && spec.k == message.k,
          ErrorCode::kDecode, "transform dimensions do not match the header");
  if (ensemble == Ensemble::kCorrelatedSrht) {
    Require(config != nullptr, ErrorCode::kConfiguration,
            "correlated transforms need the shared configuration");
    for (std::uint32_t g = 0; g < config->groups; ++g) {
      const Seed128 shared = GroupSharedSeed(*config, g);
      if (SeedDigest(shared) == message.seed_digest) {
        spec.shared_seed = shared;
        return Realize(spec);
      }
    }
    Fail(ErrorCode::kMismatch, "message seed digest does not match the shared diagonal");
  }
  return Realize(spec);
}

ServerEstimate ProjUnitServer(std::span<const ClientMessage> messages) {
  const auto start = Clock::now();
  RequireUniform(messages);
  const Variant variant = messages.front().variant;
  Require(variant != Variant::kCorrelated && variant != Variant::kNearlyUnbiasedSrht,
          ErrorCode::kConfiguration, "variant needs its dedicated server");
  const std::uint32_t d = messages.front().d;
  if (variant == Variant::kDirectPrivUnitG) {
    std::vector<double> acc(d, 0.0);
    for (const ClientMessage& m : messages) {
      for (std::uint32_t i = 0; i < d; ++i) acc[i] += m.payload[i];
    }
    return Finish(std::move(acc), messages, start);
  }
  std::vector<double> acc(TransformDim(VariantEnsemble(messages.front()), d), 0.0);
  for (const ClientMessage& m : messages) {
    MessageTransform(m).AccumulateAdjoint(ToDouble(m.payload), 1.0, acc);
  }
  return Finish(std::move(acc), messages, start);
}

ServerEstimate CorrelatedServer(std::span<const ClientMessage> messages,
                                const CorrelatedConfig& config) {
  const auto start = Clock::now();
  RequireUniform(messages);
  Require(messages.front().variant == Variant::kCorrelated, ErrorCode::kConfiguration,
          "correlated server needs correlated messages");
  return Finish(SharedDiagonalSum(messages, config, messages.front().k, 1.0), messages, start);
}

ServerEstimate NearlyUnbiasedServer(std::span<const ClientMessage> messages,
                                    const CorrelatedConfig* config) {
  const auto start = Clock::now();
  RequireUniform(messages);
  const ClientMessage& first = messages.front();
  Require(first.variant == Variant::kNearlyUnbiasedSrht, ErrorCode::kConfiguration,
          "nearly-unbiased server needs nearly-unbiased messages");
  Require(first.c_value.has_value(), ErrorCode::kDecode, "message is missing C");
  const bool shared = (first.flags & kFlagSharedDiagonal) != 0;
  for (const ClientMessage& m : messages) {
    Require(m.c_value.has_value() && *m.c_value == *first.c_value, ErrorCode::kMismatch,
            "messages disagree on the completion constant C");
    Require(((m.flags & kFlagSharedDiagonal) != 0) == shared, ErrorCode::kMismatch,
            "messages mix shared and per-message diagonals");
  }
  const double root_c = std::sqrt(static_cast<double>(*first.c_value));
  const std::uint32_t k = first.k;
  if (shared) {
    Require(config != nullptr, ErrorCode::kConfiguration,
            "shared-diagonal messages need the correlated configuration");
    return Finish(SharedDiagonalSum(messages, *config, k, root_c), messages, start);
  }
  std::vector<double> acc(NextPowerOfTwo(first.d), 0.0);
  for (const ClientMessage& m : messages) {
    const std::vector<double> head(m.payload.begin(), m.payload.begin() + k);
    MessageTransform(m).AccumulateAdjoint(head, root_c, acc);
  }
  return Finish(std::move(acc), messages, start);
}

ServerEstimate Aggregate(std::span<const ClientMessage> messages,
                         const CorrelatedConfig* config) {
  Require(!messages.empty(), ErrorCode::kConfiguration, "server needs at least one message");
  switch (messages.front().variant) {
    case Variant::kCorrelated:
      Require(config != nullptr, ErrorCode::kConfiguration,
              "correlated messages need the correlated configuration");
      return CorrelatedServer(messages, *config);
    case Variant::kNearlyUnbiasedSrht:
      return NearlyUnbiasedServer(messages, config);
    default:
      return ProjUnitServer(messages);
  }
}

std::vector<std::uint8_t> Serialize(const ClientMessage& m) {
  Require(m.payload.size() == PayloadLength(m.variant, m.d, m.k), ErrorCode::kDimension,
          "payload length does not match the variant");
  Require(m.c_value.has_value() == (m.variant == Variant::kNearlyUnbiasedSrht),
          ErrorCode::kConfiguration, "C travels with nearly-unbiased messages only");
  ByteWriter out;
  out.PutU16(kMessageMagic);
  out.PutU8(kWireVersion);
  out.PutU8(static_cast<std::uint8_t>(m.variant));
  out.PutU32(m.d);
  out.PutU32(m.k);
  out.PutU64(m.seed_digest);
  out.PutU8(m.flags);
  out.PutBytes(m.transform_encoding);
  if (m.c_value) out.PutF32(*m.c_value);
  for (float x : m.payload) out.PutF32(x);
  return out.Take();
}

ClientMessage Deserialize(std::span<const std::uint8_t> bytes) {
  ByteReader in(bytes);
  Require(in.GetU16() == kMessageMagic, ErrorCode::kDecode, "bad message magic");
  const std::uint8_t version = in.GetU8();
  if (version != kWireVersion) {
    Fail(ErrorCode::kDecode, "unsupported message version " + std::to_string(version));
  }
  const std::uint8_t tag = in.GetU8();
  Require(tag <= static_cast<std::uint8_t>(Variant::kDirectPrivUnitG), ErrorCode::kDecode,
          "unknown variant tag");
  ClientMessage m;
  m.variant = static_cast<Variant>(tag);
  m.d = in.GetU32();
  m.k = in.GetU32();
  m.seed_digest = in.GetU64();
  m.flags = in.GetU8();
  Require(m.d >= 1 && m.k >= 1 && m.k <= m.d, ErrorCode::kDecode,
          "message header has invalid dimensions");
  Require((m.flags & ~(kFlagHasC | kFlagSharedDiagonal)) == 0, ErrorCode::kDecode,
          "unknown message flags");
  const bool has_c = (m.flags & kFlagHasC) != 0;
  Require(has_c == (m.variant == Variant::kNearlyUnbiasedSrht), ErrorCode::kDecode,
          "C flag does not match the variant");
  const bool shared = (m.flags & kFlagSharedDiagonal) != 0;
  Require(!shared || m.variant == Variant::kCorrelated ||
              m.variant == Variant::kNearlyUnbiasedSrht,
          ErrorCode::kDecode, "shared-diagonal flag on an uncorrelated variant");
  Require(m.variant != Variant::kCorrelated || shared, ErrorCode::kDecode,
          "correlated message without the shared-diagonal flag");

  if (m.variant == Variant::kDirectPrivUnitG) {
    Require(m.k == m.d, ErrorCode::kDecode, "direct messages have k = d");
  } else {
    const std::span<const std::uint8_t> rest = bytes.subspan(kMessageHeaderBytes);
    std::size_t used = 0;
    const TransformSpec spec = DecodeTransform(rest, &used);
    const Ensemble ensemble = VariantEnsemble(m);
    Require(spec.ensemble == ensemble, ErrorCode::kDecode,
            "transform ensemble does not match the variant");
    Require(spec.d == TransformDim(ensemble, m.d) && spec.k == m.k, ErrorCode::kDecode,
            "transform dimensions do not match the header");
    m.transform_encoding.assign(rest.begin(), rest.begin() + used);
    in.GetBytes(used);
  }
  if (has_c) {
    const float c = in.GetF32();
    Require(std::isfinite(c) && c >= 1.0f, ErrorCode::kDecode, "C must be finite and >= 1");
    m.c_value = c;
  }
  const std::size_t len = PayloadLength(m.variant, m.d, m.k);
  Require(in.remaining() == 4 * len, ErrorCode::kDecode,
          "payload length does not match the variant");
  m.payload.resize(len);
  for (float& x : m.payload) x = in.GetF32();
  return m;
}

std::uint64_t BitCost(const ClientMessage& m) {
  return 8 * (kMessageHeaderBytes + m.transform_encoding.size() + (m.c_value ? 4 : 0) +
              4 * m.payload.size());
}

}  // namespace projunit
