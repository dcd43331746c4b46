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

#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cli_lists.hpp"
#include "projunit/dpsgd.hpp"
#include "projunit/error.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Private SGD on a synthetic logistic-regression task"};
  projunit::TrainConfig config;
  std::string eps_list = "4";
  std::string variant = "srht";
  std::uint64_t seed = 7;
  std::uint32_t train_size = 2000;
  std::uint32_t test_size = 500;
  std::string out;
  app.add_option("--d", config.d, "model dimension");
  app.add_option("--eps", eps_list, "per-step budgets, comma separated");
  app.add_option("--variant", variant, "none,direct,srht,rot,corr,gaussian,...");
  app.add_option("--k", config.k, "projection dimension (default d/4)");
  app.add_option("--epochs", config.epochs, "epochs");
  app.add_option("--batch", config.batch, "batch size");
  app.add_option("--lr", config.lr, "step size");
  app.add_option("--momentum", config.momentum, "momentum");
  app.add_option("--clip", config.clip, "gradient clip norm");
  app.add_option("--train-size", train_size, "training examples");
  app.add_option("--test-size", test_size, "test examples");
  app.add_option("--seed", seed, "seed");
  app.add_option("--out", out, "CSV path (appended); stdout when absent");
  CLI11_PARSE(app, argc, argv);

  try {
    config.variant = projunit::ParseMechanism(variant);
    config.seed = projunit::Seed128{0, seed};
    const auto task = projunit::MakeSyntheticTask(config.d, train_size, test_size,
                                                  projunit::DeriveSeed(config.seed, 99));
    for (double eps : projunit::tools::ParseDoubles(eps_list)) {
      config.eps = eps;
      const projunit::TrainResult result = projunit::Train(config, task);
      if (out.empty()) {
        for (const auto& e : result.curve) {
          std::cout << variant << " eps=" << eps << " epoch=" << e.epoch
                    << " loss=" << e.train_loss << " acc=" << e.test_accuracy << '\n';
        }
        std::cout << "steps=" << result.steps << " eps_per_step=" << result.eps_per_step
                  << " (no composition across steps)\n";
      } else {
        projunit::WriteCurveCsv(result, config, out);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
