"""
Interaction graphs
==================

Each wave-packet holds n = 2m + 1 micro-modes. The two patterns differ only
in which signal-idler pairs the pump couples.
"""

from mpdc_collective import ModelConfig, build_graph, is_connected, vertex_degree

# %%
# Pairwise: signal mode k talks only to its energy-conserving partner -k.
pairwise = build_graph(ModelConfig(pattern="pairwise").replace(n=5))
print("pairwise edges:", len(pairwise.edges))
print("partner of (1, 2):", pairwise.neighbors((1, 2)))
print(pairwise.adjacency())

# %%
# One-to-all: every signal mode talks to every idler mode.
one_to_all = build_graph(ModelConfig().replace(n=5))
print("one-to-all edges:", len(one_to_all.edges))
print("degree of (1, 0):", vertex_degree(one_to_all, (1, 0)))

# %%
# Only the one-to-all graph ties all micro-modes together.
print("connected:", is_connected(pairwise), is_connected(one_to_all))
