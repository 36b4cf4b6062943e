"""Files, the built-in control catalog, and the what-if HTTP service.

Saves the demo assessment in canonical form, reloads it, browses the 31
built-in evaluation factors, scaffolds factors from catalog ids, then spins
up the HTTP API and runs a what-if query against it.

Run: python demos/04_files_catalog_and_service.py
Outputs: demos/output/demo_org.risk
"""

import json
import urllib.request
from pathlib import Path

from mlrisk import builtin_catalog, instantiate_from_catalog, load_assessment, save_assessment
from mlrisk.service import serve

import importlib.util

_here = Path(__file__).parent
_spec = importlib.util.spec_from_file_location("walkthrough", _here / "01_scoring_walkthrough.py")
_walkthrough = importlib.util.module_from_spec(_spec)
_spec.loader.exec_module(_walkthrough)
build_assessment = _walkthrough.build_assessment


def main() -> None:
    out = _here / "output"
    out.mkdir(exist_ok=True)
    path = out / "demo_org.risk"

    a = build_assessment()
    save_assessment(a, path)
    reloaded = load_assessment(path)
    print(f"saved and reloaded {path}: equal={reloaded == a}")

    print("\nbuilt-in catalog by group:")
    by_category = {}
    for entry in builtin_catalog():
        by_category.setdefault(entry.category.value, []).append(entry.id)
    for category, ids in by_category.items():
        print(f"  {category:<22} {len(ids):>2}   {ids[0]}..{ids[-1]}")

    picked = instantiate_from_catalog(["D.01", "M.03", "S.05"])
    print("\nscaffolded factors (weights and costs to be set by the assessor):")
    for f in picked:
        print(f"  {f.id} {f.name} [{f.category.value}]")

    server = serve(path, ("127.0.0.1", 0))
    host, port = server.address
    print(f"\nservice up on http://{host}:{port}/api")
    try:
        body = json.dumps({"scores": [0.8, 0.7, 0.7]}).encode()
        request = urllib.request.Request(
            f"http://{host}:{port}/api/whatif", data=body,
            headers={"Content-Type": "application/json"},
        )
        with urllib.request.urlopen(request) as resp:
            answer = json.loads(resp.read())
        final = answer["report"]["final_scores"]
        ratio = answer["cost"]["efficiency_ratio"]
        print("what-if at scores (0.8, 0.7, 0.7):")
        for attribute in ("C", "I", "A"):
            print(f"  {attribute}: proactive {final[attribute]['proactive']:.2f}  "
                  f"reactive {final[attribute]['reactive']:.2f}")
        print(f"  efficiency ratio {ratio:.2f}")
        with urllib.request.urlopen(f"http://{host}:{port}/api/assessment") as resp:
            revision = json.loads(resp.read())["revision"]
        print(f"revision after what-ifs is still {revision} (what-if never mutates)")
    finally:
        server.shutdown()


if __name__ == "__main__":
    main()
