/*
 * Copyright 2026 swarm-recovery contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <iostream>

#include "CLI11.hpp"
#include "swarm/io/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"swarmrec - recovery-supervisor synthesis and swarm simulation"};
  app.require_subcommand(1);

  swarm::io::Options o;
  std::uint32_t start = 0;
  std::size_t budget = 0;

  auto add_model = [&](CLI::App* c) {
    c->add_option("--map", o.map_file,
                  "model or map document (default: the built-in 5x5 mission)");
  };
  auto add_synth_flags = [&](CLI::App* c) {
    c->add_option("--estimate", o.estimate, "comma-separated zone list, e.g. 1,2");
    c->add_option("--seed", o.seed, "seed for randomized orderings and loss rolls");
    c->add_option("--order", o.order,
                  "decision ordering: prefer-move|minimal|random|maxperm");
    c->add_option("--explore", o.explore, "game exploration: dfs|bfs");
    c->add_option("--budget", budget,
                  "node budget for synthesis (default $SWARMREC_BUDGET or 1000000)");
  };

  CLI::App* synth = app.add_subcommand("synth", "synthesize a recovery supervisor");
  add_model(synth);
  add_synth_flags(synth);
  synth->add_option("-o,--out", o.out_file, "supervisor document target (default stdout)");
  synth->add_option("--dot", o.dot_file, "also export the full game as Graphviz DOT");

  CLI::App* simulate =
      app.add_subcommand("simulate", "run one closed-loop recovery trial");
  add_model(simulate);
  add_synth_flags(simulate);
  simulate->add_option("--start", start, "true zone of the lost drone (must be in the estimate)");
  simulate->add_option("--durations", o.durations,
                       "action durations in seconds: search,move,return,inner");
  simulate->add_option("--loss", o.loss, "loss policy in unsafe zones: never|always|p=<prob>");
  simulate->add_option("--drones", o.drones, "swarm size (default 10)");
  simulate->add_option("--trace", o.trace_file, "trace file target (default stdout)");

  CLI::App* benchmark = app.add_subcommand(
      "benchmark", "run the built-in trial matrix and compare verdicts");
  add_model(benchmark);
  add_synth_flags(benchmark);
  benchmark->add_option("--durations", o.durations,
                     "action durations in seconds: search,move,return,inner");

  CLI::App* verify = app.add_subcommand(
      "verify", "nonblocking, soundness, and engine-vs-oracle checks");
  add_model(verify);
  add_synth_flags(verify);

  CLI::App* export_dot =
      app.add_subcommand("export-dot", "Graphviz export of an automaton or a game");
  add_model(export_dot);
  add_synth_flags(export_dot);
  export_dot->add_option("--automaton", o.automaton,
                         "export this automaton instead of synthesizing a game");
  export_dot->add_option("-o,--out", o.out_file, "DOT target (default stdout)");

  CLI::App* dump_model =
      app.add_subcommand("dump-model", "write the model document for a map");
  add_model(dump_model);
  dump_model->add_option("-o,--out", o.out_file, "document target (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return swarm::io::kIoError;
  }

  if (simulate->count("--start")) o.start = start;
  for (CLI::App* c : {synth, simulate, benchmark, verify, export_dot})
    if (c->count("--budget")) o.budget = budget;

  if (synth->parsed()) return swarm::io::cmd_synth(o, std::cout, std::cerr);
  if (simulate->parsed()) return swarm::io::cmd_simulate(o, std::cout, std::cerr);
  if (benchmark->parsed()) return swarm::io::cmd_benchmark(o, std::cout, std::cerr);
  if (verify->parsed()) return swarm::io::cmd_verify(o, std::cout, std::cerr);
  if (export_dot->parsed()) return swarm::io::cmd_export_dot(o, std::cout, std::cerr);
  if (dump_model->parsed()) return swarm::io::cmd_dump_model(o, std::cout, std::cerr);
  return swarm::io::kIoError;
}
