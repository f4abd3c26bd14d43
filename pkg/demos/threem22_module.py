"""The six-dimensional hermitian module over F_4 and its 22 isotropic subspaces."""
from fusion_obstruct.obstruction import rplus_set
from fusion_obstruct.threem22 import ThreeM22Module, orthogonality_duality

mod = ThreeM22Module()
print("1-spaces of F_4^3:", orthogonality_duality()["one_spaces"])

sub = mod.subspace_checks()
print(f"{sub['count']} subspaces, totally isotropic: {sub['totally_isotropic']}")
for row in mod.mog():
    print("   " + "  ".join(f"{c:>4}" for c in row))

delta = mod.delta_checks()
print(f"Delta has order {delta['delta_order']}, acting on the six points as a group of order {delta['image_order']}")

lb = mod.sylow_structure()
print(f"Sylow 2-subgroup order {lb['sylow_order']}; rank-4 subgroups are P1 and P2: {lb['rank4_are_P1_P2']}")

v = rplus_set(mod.context)
print(f"R+ over {v.pairs_considered} pairs: {len(v.feasible)} feasible, verdict {v.status}")
