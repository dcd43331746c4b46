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

// Client and server halves of the projected mean-estimation protocols.
//
// Every client runs exactly one PrivUnitG call on a unit vector and ships its
// float32 output together with an encoding of the projection it used. Servers
// decode the projection and average W^T u_hat.
//
// Message layout (big-endian):
//
//   offset  size  field
//   0       2     magic 0x4C44 ("LD")
//   2       1     version
//   3       1     variant
//   4       4     d (input dimension before any padding)
//   8       4     k
//   12      8     seed digest (shared diagonal seed for correlated messages)
//   20      1     flags: bit 0 = carries C, bit 1 = shared diagonal
//   21      ..    transform encoding (absent for DirectPrivUnitG)
//   ..      4     C as binary32 (NearlyUnbiasedSRHT only)
//   ..      4*len payload as binary32
//
// Hadamard transforms act on the input zero-padded to the next power of two,
// so their encoded d can exceed the header d.

#ifndef PROJUNIT_PROTOCOL_HPP_
#define PROJUNIT_PROTOCOL_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "projunit/rng.hpp"
#include "projunit/transform_codec.hpp"
#include "projunit/transforms.hpp"

namespace projunit {

enum class Variant : std::uint8_t {
  kProjUnitRot = 0,
  kProjUnitSrht = 1,
  kProjUnitGauss = 2,
  kCorrelated = 3,
  kUnbiasedRot = 4,
  kNearlyUnbiasedSrht = 5,
  kDirectPrivUnitG = 6,
};

const char* VariantName(Variant variant);

inline constexpr std::uint16_t kMessageMagic = 0x4C44;
inline constexpr std::size_t kMessageHeaderBytes = 21;
inline constexpr std::uint8_t kFlagHasC = 0x01;
inline constexpr std::uint8_t kFlagSharedDiagonal = 0x02;

struct ClientMessage {
  Variant variant = Variant::kDirectPrivUnitG;
  std::uint32_t d = 0;
  std::uint32_t k = 0;
  std::uint64_t seed_digest = 0;
  std::uint8_t flags = 0;
  std::vector<std::uint8_t> transform_encoding;
  std::vector<float> payload;
  std::optional<float> c_value;

  bool operator==(const ClientMessage&) const = default;
};

// Payload length the variant requires for (d, k).
std::size_t PayloadLength(Variant variant, std::uint32_t d, std::uint32_t k);

struct ClientOptions {
  EncodingMode encoding = EncodingMode::kSeed;
  // Replace PrivUnitG by the identity. Testing only; not private.
  bool noiseless = false;
};

struct CorrelatedConfig {
  Seed128 shared_seed;
  std::uint32_t groups = 1;
};

// Group a client falls into and the diagonal seed that group uses.
std::uint32_t CorrelatedGroup(const CorrelatedConfig& config, const Seed128& client_seed);
Seed128 GroupSharedSeed(const CorrelatedConfig& config, std::uint32_t group);

struct ServerEstimate {
  std::vector<double> mu_hat;
  std::size_t n = 0;
  std::uint64_t total_bits = 0;
  std::int64_t server_nanos = 0;
};

// Per-message seed: DeriveSeed(master, client_index, round).
Seed128 DeriveClientSeed(const Seed128& master, std::uint64_t client_index,
                         std::uint64_t round = 0);

// sqrt(k/d) Gamma((d+1)/2) Gamma(k/2) / (Gamma((k+1)/2) Gamma(d/2)).
double UnbiasedRotationFactor(std::uint32_t d, std::uint32_t k);

// 1 + 2 sqrt(log^2(k/delta) / k), rounded to binary32 since it travels as one.
double CompletionConstant(std::uint32_t k, double delta);
// k / (n^2 d).
double DefaultCompletionDelta(std::uint32_t k, std::uint64_t n, std::uint32_t d);

ClientMessage ProjUnitClient(std::span<const double> v, Ensemble ensemble, std::uint32_t k,
                             double eps, const Seed128& seed, const ClientOptions& options = {});
ClientMessage CorrelatedClient(std::span<const double> v, const CorrelatedConfig& config,
                               std::uint32_t k, double eps, const Seed128& seed,
                               const ClientOptions& options = {});
ClientMessage UnbiasedRotationClient(std::span<const double> v, std::uint32_t k, double eps,
                                     const Seed128& seed, const ClientOptions& options = {});
// With a config the diagonal comes from the shared seed and only the rows are
// sent; without one each message carries its own SRHT.
ClientMessage NearlyUnbiasedClient(std::span<const double> v, std::uint32_t k, double eps,
                                   double delta, const Seed128& seed,
                                   const CorrelatedConfig* config = nullptr,
                                   const ClientOptions& options = {});
ClientMessage DirectPrivUnitGClient(std::span<const double> v, double eps, const Seed128& seed,
                                    const ClientOptions& options = {});

// ProjUnit (any ensemble), unbiased rotation and direct PrivUnitG messages.
ServerEstimate ProjUnitServer(std::span<const ClientMessage> messages);
ServerEstimate CorrelatedServer(std::span<const ClientMessage> messages,
                                const CorrelatedConfig& config);
ServerEstimate NearlyUnbiasedServer(std::span<const ClientMessage> messages,
                                    const CorrelatedConfig* config = nullptr);
// Dispatches on the variant of the first message.
ServerEstimate Aggregate(std::span<const ClientMessage> messages,
                         const CorrelatedConfig* config = nullptr);

std::vector<std::uint8_t> Serialize(const ClientMessage& message);
ClientMessage Deserialize(std::span<const std::uint8_t> bytes);
std::uint64_t BitCost(const ClientMessage& message);

// Transform a message was produced with. Correlated encodings need the config
// to recover their diagonal.
LinearTransform MessageTransform(const ClientMessage& message,
                                 const CorrelatedConfig* config = nullptr);

}  // namespace projunit

#endif  // PROJUNIT_PROTOCOL_HPP_
