"""Two graphs that soft interventions cannot tell apart, but hard ones can.

D1 and D2 differ only in a direct edge X -> Y. Both have a latent
confounder between Z and Y. We intervene on Z and compare the observational
domain with the {Z} domain.

Under a soft intervention, Z keeps its parents and its confounder, so nothing
new is learnt about X -> Y. A hard intervention cuts Z <-> Y, and in the
{Z} domain X and Y become separable in D1 but not in D2.

Run:  python3 demos/01_why_hard_interventions_help.py
"""
from hardimec import (
    augmented_pair_graph,
    format_mixed,
    i_markov_equivalent,
    latent_project,
    parse_admg,
    parse_targets,
    twin_augmented_mag,
)

d1 = parse_admg("X -> Z\nZ -> Y\nZ <-> Y\n")
d2 = parse_admg("X -> Z\nZ -> Y\nZ <-> Y\nX -> Y\n")
targets = parse_targets("{};{Z}")
pair = targets.pair(1, 2)

print("D1 projected to a MAG (X and Y already look adjacent):")
print(format_mixed(latent_project(d1)))

print("Augmented pair graph for D1: two cut copies joined by F@1,2")
print(augmented_pair_graph(d1, pair))
print()

for name, d in (("D1", d1), ("D2", d2)):
    print(f"Twin augmented MAG of {name}:")
    print(format_mixed(twin_augmented_mag(d, pair).graph))

for regime in ("soft", "hard"):
    print(f"{regime} regime:")
    print(i_markov_equivalent(d1, d2, targets, regime))
    print()
