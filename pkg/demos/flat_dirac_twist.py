"""Pointwise fluctuation coefficients for the flat Dirac operator.

Plane-wave coefficients f_mu, g_mu stand in for a [D, b]-type term and its
J-conjugate at a point.  The engine classifies the candidate term
f_mu gamma^mu grading + g_mu J (gamma^mu grading) J^-1 by KO branch: on
{2,6} it is anti-Hermitian and never accepted, on {0,4} acceptance is a
gate on max |Re f_mu + Re g_mu| and the surviving operator collapses to
-2i Re(f_mu) gamma^mu grading.
"""

import numpy as np

from nctwist import free_dirac_pointwise


def show(m, samples, label):
    rep = free_dirac_pointwise(m, samples)
    info = rep.info
    print(f"{label}: branch {info['branch']}, accepted {info['accepted']}")
    print(f"  defect {info['defect']:.3e}, coefficient gate {info['coeff_defect']:.3e}")


rng = np.random.default_rng(11)

print("m=1 (two dimensions, branch {2,6}): nothing survives")
for k in range(3):
    samples = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    show(1, samples, f"  draw {k}")

print("\nm=2 (four dimensions, branch {0,4}): the gate decides")
f = rng.standard_normal(4) + 1j * rng.standard_normal(4)
show(2, np.stack([f, -np.conj(f)], axis=1), "  g = -conj(f), real parts cancel")
g = rng.standard_normal(4) + 1j * rng.standard_normal(4)
show(2, np.stack([f, g], axis=1), "  generic g, gate fails")

print("\nfull report for the accepted case")
print(free_dirac_pointwise(2, np.stack([f, -np.conj(f)], axis=1)).format_text())
