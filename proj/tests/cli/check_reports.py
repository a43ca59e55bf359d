#!/usr/bin/env python3
"""Runs the gkz executable over the case manifest and the malformed corpus.

Every report must validate against docs/report.schema.json, repeat byte for
byte on a second run, and carry the expected exit code. Seeded mutations of
the valid requests must all be rejected with exit code 2.
"""

import copy
import json
import pathlib
import random
import subprocess
import sys
import tempfile

import jsonschema


def run(exe, args, stdin_bytes=None):
    p = subprocess.run([exe] + args, input=stdin_bytes, capture_output=True, timeout=120)
    return p.returncode, p.stdout


def pointer(doc, ptr):
    cur = doc
    for part in ptr.lstrip("/").split("/"):
        cur = cur[int(part)] if isinstance(cur, list) else cur[part]
    return cur


class Checker:
    def __init__(self, exe, schema):
        self.exe = exe
        self.validator = jsonschema.Draft202012Validator(schema)
        self.failures = []
        self.count = 0

    def fail(self, name, msg):
        self.failures.append(f"{name}: {msg}")

    def report(self, name, args, stdin_bytes=None):
        self.count += 1
        code, out = run(self.exe, args, stdin_bytes)
        code2, out2 = run(self.exe, args, stdin_bytes)
        if (code, out) != (code2, out2):
            self.fail(name, "output differs between identical runs")
        try:
            doc = json.loads(out)
        except ValueError as e:
            self.fail(name, f"report is not JSON ({e}): {out[:200]!r}")
            return code, None
        errors = sorted(self.validator.iter_errors(doc), key=lambda e: list(e.path))
        for e in errors[:3]:
            self.fail(name, f"schema: {e.message} at {list(e.path)}")
        if doc.get("exit_code") != code:
            self.fail(name, f"exit_code field {doc.get('exit_code')} but process exited {code}")
        return code, doc


def with_input(args, request):
    if request is None:
        return args, None
    if isinstance(request, (dict, list)):
        data = json.dumps(request).encode()
    else:
        data = request
    return args + ["--input", "-"], data


def main():
    exe = sys.argv[1]
    root = pathlib.Path(__file__).resolve().parent
    schema = json.loads((root.parents[1] / "docs" / "report.schema.json").read_text())
    ck = Checker(exe, schema)

    cases = json.loads((root / "cases.json").read_text())
    valid_requests = []
    for case in cases:
        args, data = with_input(case["args"], case.get("input"))
        code, doc = ck.report(case["name"], args, data)
        if case.get("exit") is not None and code != case["exit"]:
            ck.fail(case["name"], f"exit {code}, expected {case['exit']}; {doc and doc.get('diagnostics')}")
        for ptr, want in case.get("expect", {}).items():
            try:
                got = pointer(doc, ptr)
            except (KeyError, IndexError, TypeError):
                ck.fail(case["name"], f"{ptr} missing")
                continue
            if got != want:
                ck.fail(case["name"], f"{ptr} = {got!r}, expected {want!r}")
        if code == 0 and isinstance(case.get("input"), dict) and len(case["args"]) == 1:
            valid_requests.append(case)

    for path in sorted((root / "malformed").glob("*.json")):
        for args in (["run", "--input", str(path)], ["classify", "--input", str(path)]):
            code, doc = ck.report(path.name, args)
            if code != 2:
                ck.fail(path.name, f"exit {code} for {args[0]}, expected 2")

    # a report re-parses: feed each request file twice through a temp file
    with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as tmp:
        json.dump(cases[0]["input"], tmp)
    code, doc = ck.report("file input", ["run", "--input", tmp.name])
    if code != 0:
        ck.fail("file input", f"exit {code}")
    pathlib.Path(tmp.name).unlink()

    # seeded mutations: each one must be an input error
    rng = random.Random(0)
    mutations = 0
    for case in valid_requests:
        base = dict(case["input"])
        base.setdefault("command", case["args"][0] if case["args"][0] != "run" else base.get("command"))
        text = json.dumps(base)
        for _ in range(8):
            kind = rng.randrange(3)
            if kind == 0:
                cut = rng.randrange(1, len(text))
                data = text[:cut].encode()
            elif kind == 1:
                doc = copy.deepcopy(base)
                leaves = []

                def walk(node, parent, key):
                    if isinstance(node, dict):
                        for k, v in node.items():
                            walk(v, node, k)
                    elif isinstance(node, list):
                        for i, v in enumerate(node):
                            walk(v, node, i)
                    else:
                        leaves.append((parent, key))

                walk(doc, None, None)
                parent, key = rng.choice(leaves)
                parent[key] = rng.choice(["zz", [], {"q": 1}, None, True]) if key != "command" else "zz"
                if parent[key] is None and isinstance(parent, dict):
                    parent[key] = "zz"
                data = json.dumps(doc).encode()
            else:
                doc = copy.deepcopy(base)
                objs = []

                def collect(node):
                    if isinstance(node, dict):
                        objs.append(node)
                        for v in node.values():
                            collect(v)
                    elif isinstance(node, list):
                        for v in node:
                            collect(v)

                collect(doc)
                target = rng.choice([o for o in objs if o is doc or "terms" not in o] or [doc])
                target["unexpected_" + str(rng.randrange(1000))] = 1
                data = json.dumps(doc).encode()
            mutations += 1
            code, rep = ck.report(f"mutation of {case['name']}", ["run", "--input", "-"], data)
            if code != 2:
                ck.fail(f"mutation of {case['name']}", f"exit {code} for {data[:160]!r}")

    print(f"{ck.count} reports checked ({mutations} mutations)")
    for f in ck.failures:
        print("FAIL", f)
    return 1 if ck.failures else 0


if __name__ == "__main__":
    sys.exit(main())
