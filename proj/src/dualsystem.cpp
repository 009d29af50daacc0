// Copyright 2026 The b2frame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "b2frame/dualsystem.hpp"

namespace b2frame {

std::string to_string(EntrySign s) {
  switch (s) {
    case EntrySign::IdenticallyZero:
      return "zero";
    case EntrySign::StrictlyPositive:
      return "positive";
    case EntrySign::Mixed:
      return "mixed";
  }
  return "unknown";
}

}  // namespace b2frame
