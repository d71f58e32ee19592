"""
Birth time of entanglement
==========================

A thermal state starts separable. Entanglement appears once |det gamma|
overtakes S0, the thermal product of the initial collective photon numbers.
"""

from mpdc_collective import (ModelConfig, bte_numeric, bte_pairwise_closed_form,
                             thermal_state)

# %%
# Pairwise: closed form and bisection agree, and n plays no role.
for theta in (30.0, 300.0, 3000.0):
    cfg = ModelConfig(pattern="pairwise", theta=theta)
    print(f"theta={theta:6g}  closed={bte_pairwise_closed_form(thermal_state(cfg)):.10f}"
          f"  numeric={bte_numeric(cfg):.10f}")

# %%
# One-to-all: more modes make entanglement appear sooner.
for n in (1, 3, 5, 7, 9, 11):
    cfg = ModelConfig(theta=300.0).replace(n=n)
    print(f"n={n:2d}  tau_E={bte_numeric(cfg):.6f}")

# %%
# The vacuum is entangled from the start.
print("vacuum:", bte_numeric(ModelConfig().replace(n=5)))
