# Copyright 2026 The Touch Audition Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Regenerates stats_reference.inc from scipy.stats (reference oracle).

Run once; the generated file is checked in and the C++ tests never call Python.
"""
import numpy as np
from scipy import stats

rng = np.random.default_rng(20241014)
LICENSE = """\
// Copyright 2026 The Touch Audition Authors. All Rights Reserved.
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

"""
out = [LICENSE.rstrip("\n")]


def fmt(xs):
    return "{" + ", ".join(repr(float(x)) for x in xs) + "}"


out.append("// Generated by gen_stats_fixtures.py from scipy %s. Do not edit." % __import__("scipy").__version__)
out.append("struct ShapiroFixture { std::vector<double> x; double w; double p; };")
out.append("struct PairedFixture { std::vector<double> a; std::vector<double> b; double t; double p; };")

# Classic textbook sample (weights, n=11).
textbook = [148, 154, 158, 160, 161, 162, 166, 170, 182, 195, 236]
w, p = stats.shapiro(textbook)
out.append("inline const ShapiroFixture kShapiroTextbook{%s, %r, %r};" % (fmt(textbook), float(w), float(p)))

bimodal = [0.0] * 10 + [100.0] * 10
w, p = stats.shapiro(bimodal)
out.append("inline const ShapiroFixture kShapiroBimodal{%s, %r, %r};" % (fmt(bimodal), float(w), float(p)))

out.append("inline const std::vector<ShapiroFixture> kShapiroRandom{")
for i in range(50):
    n = int(rng.integers(3, 51))
    kind = i % 3
    if kind == 0:
        x = rng.normal(10.0, 3.0, n)
    elif kind == 1:
        x = rng.exponential(2.0, n)
    else:
        x = rng.uniform(-5.0, 5.0, n)
    x = np.round(x, 6)
    w, p = stats.shapiro(x)
    out.append("  {%s, %r, %r}," % (fmt(x), float(w), float(p)))
out.append("};")

out.append("inline const std::vector<PairedFixture> kPairedRandom{")
for i in range(50):
    n = int(rng.integers(2, 31))
    a = np.round(rng.normal(80.0, 5.0, n), 6)
    b = np.round(a + rng.normal(rng.uniform(-3, 3), 2.0, n), 6)
    t, p = stats.ttest_rel(a, b)
    out.append("  {%s, %s, %r, %r}," % (fmt(a), fmt(b), float(t), float(p)))
out.append("};")

d = [2, 0, 1, 3, -1, 1]
t, p = stats.ttest_1samp(d, 0.0)
out.append("// Hand example: differences {2,0,1,3,-1,1} -> t=%r p=%r" % (float(t), float(p)))

with open(__file__.replace("gen_stats_fixtures.py", "stats_reference.inc"), "w") as f:
    f.write("\n".join(out) + "\n")
