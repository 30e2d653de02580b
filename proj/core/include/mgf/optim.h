// core/include/mgf/optim.h

// Copyright 2026  The mgf authors

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

#ifndef MGF_OPTIM_H_
#define MGF_OPTIM_H_

#include "mgf/params.h"

namespace mgf {

struct AdamConfig {
  double lr = 2e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

/// One bias-corrected Adam update over every parameter in the set, driven by
/// the accumulated gradients. Advances the set's shared step counter, then
/// snaps parameters and moments to the float32 grid so the state equals
/// what a checkpoint round-trip would produce. Gradients are left untouched
/// (callers zero them at the start of the next accumulation).
/// Throws NumericError on non-finite gradients.
void adam_step(ParamSet* params, const AdamConfig& config);

}  // namespace mgf

#endif  // MGF_OPTIM_H_
