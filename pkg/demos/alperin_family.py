"""The dihedral group of order 8 acting on (Z/2^n)^3, for several n."""
from fusion_obstruct.alperin import AlperinModule, onan_check

for n in (2, 3, 4):
    alp = AlperinModule(n)
    print(f"n = {n}")
    for name, row in alp.centralizer_table().items():
        comm = row["commutator_order"]
        print(f"   {name:8} |C_A(H)| = {row['centralizer_order']:4}   |[H, A]| = {comm}")
    print("   smallest index of a fixed subgroup:", alp.weak_closure()["min_index"])
    if n >= 3:
        step = alp.fusion_step()
        ok = [k for k, c in step["candidates"].items() if c["holds"]]
        print("   subgroups B satisfying the fusion condition for c_{s^2}:", ok)
    obs = alp.obstruction()
    print("   R+:", obs["rplus"], "| (c_{s^2}, <c_s>) survives:", obs["s2_with_cyclic_s_survives"])
    sig = onan_check(n)
    print(f"   wreath quotient: |C(sigma)| = {sig['fixed_sigma']}, |C(sigma^2)| = {sig['fixed_sigma2']}")
