// SPDX-License-Identifier: Apache-2.0
//
// omnistbc - omnidirectional space-time block codes for massive MIMO broadcast
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


#include "omnistbc/common.hpp"

namespace omnistbc
{

const char *to_string(ErrorKind kind)
{
    switch (kind)
    {
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::InvalidRoot: return "invalid root";
    case ErrorKind::Dimension: return "dimension mismatch";
    case ErrorKind::ConstraintViolation: return "constraint violation";
    case ErrorKind::Undecodable: return "undecodable";
    case ErrorKind::RankDeficient: return "rank deficient";
    case ErrorKind::Convergence: return "no convergence";
    case ErrorKind::CapExceeded: return "cap exceeded";
    case ErrorKind::Config: return "config error";
    case ErrorKind::Io: return "I/O error";
    }
    return "error";
}

} // namespace omnistbc
