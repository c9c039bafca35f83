#!/usr/bin/env python3
"""Rewrite corpus/golden/*.deform.json from the current gpd binary.

usage: regen_goldens.py BUILD_DIR
"""
import json
import pathlib
import subprocess
import sys
import tempfile

root = pathlib.Path(__file__).resolve().parent.parent / "corpus"
gpd = pathlib.Path(sys.argv[1]).resolve() / "tools" / "gpd"
manifest = json.loads((root / "manifest.json").read_text())
with tempfile.TemporaryDirectory() as tmp:
    out = pathlib.Path(tmp) / "report.json"
    for entry in manifest["reports"]:
        subprocess.run([str(gpd), "deform", entry["algebra"], entry["module"], "--seed", manifest["seed"],
                        "--json", str(out)], cwd=root, check=True, stdout=subprocess.DEVNULL)
        result = json.loads(out.read_text())["result"]
        if result["conclusion"] != entry["conclusion"]:
            sys.exit(f"{entry['module']}: conclusion {result['conclusion']}, manifest says {entry['conclusion']}")
        (root / entry["golden"]).write_text(json.dumps(result, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
        print("wrote", entry["golden"])
