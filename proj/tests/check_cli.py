#!/usr/bin/env python3
"""Exit codes, report determinism and CSV shape of the greedylab CLI.

usage: check_cli.py <path to greedylab> <scratch dir>
"""
import csv
import filecmp
import json
import os
import shutil
import subprocess
import sys


def run(exe, *args):
    return subprocess.run([exe, *args], capture_output=True, text=True)


def main():
    exe, scratch = sys.argv[1], sys.argv[2]
    shutil.rmtree(scratch, ignore_errors=True)
    os.makedirs(scratch)
    failures = []

    def expect(cond, msg):
        if not cond:
            failures.append(msg)

    cfg = os.path.join(scratch, "config.json")
    with open(cfg, "w") as f:
        json.dump({"space": ["xp", "ex72"], "budget": "smoke", "seed": 5, "kinds": ["g_bar", "trunc_qg", "L_ad"],
                   "m": [2], "outputs": ["params", "democracy_profile", "lemma71 exhaustive 8 samples 200",
                                         "ex72_ratio m 10,100", "bounds"]}, f)
    outs = []
    for k in range(2):
        out = os.path.join(scratch, f"run{k}")
        r = run(exe, "--config", cfg, "--out", out, "--jobs", str(k + 1), "report")
        expect(r.returncode == 0, f"report exit {r.returncode}: {r.stderr}")
        outs.append(out)
    cmp = filecmp.dircmp(outs[0], outs[1])
    expect(not cmp.diff_files and not cmp.left_only and not cmp.right_only,
           f"reports differ: {cmp.diff_files} {cmp.left_only} {cmp.right_only}")

    with open(os.path.join(outs[0], "democracy_profile.ex72.csv")) as f:
        rows = list(csv.reader(f))
    expect(rows[0] == ["W", "min_norm", "max_norm", "ratio"], f"profile header {rows[0]}")
    with open(os.path.join(outs[0], "manifest.json")) as f:
        files = {t["file"] for t in json.load(f)["tables"]}
    expect(files == {n for n in os.listdir(outs[0]) if n.endswith(".csv")}, f"manifest lists {files}")
    with open(os.path.join(outs[0], "summary.json")) as f:
        summary = json.load(f)
    expect(summary["failed"] is False and len(summary["estimates"]) == 10, "summary contents")
    with open(os.path.join(outs[0], "ex72_ratio.csv")) as f:
        vals = [row["ratio"] for row in csv.DictReader(f)]
    expect(all(len(v.replace("-", "").replace(".", "").split("e")[0].lstrip("0")) <= 17 for v in vals),
           f"digits {vals}")

    bad = os.path.join(scratch, "bad.json")
    with open(bad, "w") as f:
        json.dump({"space": "ex72", "seed": -3}, f)
    r = run(exe, "--config", bad, "report", "--out", os.path.join(scratch, "bad"))
    expect(r.returncode == 2 and "/seed" in r.stderr, f"bad config: {r.returncode} {r.stderr}")
    r = run(exe, "example", "verify", "ex74_trend")
    expect(r.returncode == 1, f"failing suite should exit 1, got {r.returncode}")
    r = run(exe, "example", "verify", "lemma71", "exhaustive", "8", "samples", "100")
    expect(r.returncode == 0 and ",true," in r.stdout, f"lemma71: {r.returncode} {r.stdout}")
    r = run(exe, "space", "eval", "--space", "ex72", "--dense", "1,-1")
    expect(r.returncode == 0 and r.stdout.splitlines()[1].endswith(",1.2124287112123493"), f"space eval: {r.stdout}")
    r = run(exe, "space", "eval", "--space", "nope", "--dense", "1")
    expect(r.returncode == 2, f"unknown space should exit 2, got {r.returncode}")
    r = run(exe, "bogus")
    expect(r.returncode == 2, f"unknown subcommand should exit 2, got {r.returncode}")

    for msg in failures:
        print("FAIL", msg)
    print(f"{len(failures)} CLI contract failures")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
