"""
Stationary quadrature variances
===============================

The same drive configuration also squeezes the intracavity and mechanical
states. The covariance matrix V follows from a Lyapunov equation in
quadrature space; its diagonal gives <X^2> and <Y^2> of each mode.
"""

from dataclasses import replace

from magnomech.figures import TEMPERATURES_K, low_damping
from magnomech.steadystate import (quadrature_variances, steady_covariance,
                                   symplectic_eigenvalues)
from magnomech.sweep import optimize_gplus

# %%
params = low_damping()
for objective, label in (("mech-variance", "mechanical X"), ("cavity-variance", "cavity Y")):
    print(label)
    for t in TEMPERATURES_K:
        opt = optimize_gplus(low_damping(t), objective)
        print(f"   T = {t:5.2f} K   G+/G- = {opt.ratio_opt:.5f}   {opt.squeezing_db:7.4f} dB")

# %%
opt = optimize_gplus(params, "mech-variance")
state = steady_covariance(replace(params, g_plus=opt.g_plus_opt))
for mv in quadrature_variances(state):
    print(f"mode {mv.mode}: <X^2> = {mv.var_x:.4f}  <Y^2> = {mv.var_y:.4f}  ({mv.squeezing_db:+.2f} dB)")

# %%
# A physical Gaussian state has every symplectic eigenvalue >= 1/2.
print("symplectic spectrum:", symplectic_eigenvalues(state.v).round(4))
print("Lyapunov residual:", f"{state.residual:.1e}")
