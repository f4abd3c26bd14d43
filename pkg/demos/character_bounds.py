"""Jordan block lower bounds from Brauer character values, and a hand-checkable instance."""
from fusion_obstruct import charbound

report = charbound.table_report()
for row in report["rows"]:
    mark = "" if row["attained"] else "  (bound exceeds the threshold)"
    print(f"{row['group']:5} p={row['p']}: threshold {row['threshold']:>4}, smallest bound {row['min_bound']:>4}{mark}")

# D10 acting on F_16 = F_2^4: the formula is exact here.
r = charbound.oracle_check(charbound.d10_module())
print(f"\n{r['name']}: bound {r['bound']}, actual number of Jordan blocks {r['jordan']}")
