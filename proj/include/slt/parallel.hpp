// Copyright 2026 The slt Authors.
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

#ifndef SLT_PARALLEL_HPP_
#define SLT_PARALLEL_HPP_

namespace slt {

// Worker count for parallel kernels: SLT_THREADS if set and positive,
// otherwise the OpenMP default. Always 1 without OpenMP.
int threadCount();

}  // namespace slt

#endif  // SLT_PARALLEL_HPP_
