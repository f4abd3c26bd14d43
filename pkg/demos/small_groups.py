"""M12 on 12 points, and the permutation-module extension for SL_2(3)."""
import json
from importlib import resources

from fusion_obstruct.groups import load_permutation_generators, verify_m12
from fusion_obstruct.permutation_extension import pgext_report

data = json.loads((resources.files("fusion_obstruct") / "data" / "m12_generators.json").read_text())
rep = verify_m12(load_permutation_generators(data))
print(json.dumps(rep.summary(), indent=2))

r = pgext_report()
print("\nSL2(3) layers:", r["dims"])
print("situation (b) holds:", r["situation_b"]["holds"])
print("at most one equal-rank element per coset of Z:", r["final_statement"]["holds"])
