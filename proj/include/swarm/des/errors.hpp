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

#ifndef SWARM_DES_ERRORS_HPP
#define SWARM_DES_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace swarm::des {

// Root of the library's error hierarchy.  Everything we throw on purpose
// derives from this, so callers (in particular the CLI layer) can map
// failures to exit codes without catching std::exception wholesale.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A caller violated a documented precondition (bad state id, estimate fed
// to the wrong model, fault injected twice, ...).
struct UsageError : Error {
  using Error::Error;
};

// A model is structurally or semantically invalid (nondeterministic
// transition table, attribute clash between shared events, marked unsafe
// state, ...).
struct ModelError : Error {
  using Error::Error;
};

// An operation's contract was violated at runtime, e.g. observing an event
// that is not feasible under the current control decision.
struct ContractViolation : Error {
  using Error::Error;
};

}  // namespace swarm::des

#endif
