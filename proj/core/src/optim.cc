// core/src/optim.cc

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

#include "mgf/optim.h"

#include <cmath>

namespace mgf {

void adam_step(ParamSet* params, const AdamConfig& config) {
  params->bump_step();
  const double t = static_cast<double>(params->step());
  const double corr1 = 1.0 - std::pow(config.beta1, t);
  const double corr2 = 1.0 - std::pow(config.beta2, t);
  for (auto& p : params->all()) {
    p->grad.check_finite("gradient of " + p->name);
    double* v = p->value.data();
    double* g = p->grad.data();
    double* m1 = p->adam_m.data();
    double* m2 = p->adam_v.data();
    for (size_t i = 0; i < p->value.size(); i++) {
      m1[i] = config.beta1 * m1[i] + (1.0 - config.beta1) * g[i];
      m2[i] = config.beta2 * m2[i] + (1.0 - config.beta2) * g[i] * g[i];
      const double mhat = m1[i] / corr1;
      const double vhat = m2[i] / corr2;
      v[i] -= config.lr * mhat / (std::sqrt(vhat) + config.eps);
    }
  }
  params->snap_f32();
}

}  // namespace mgf
