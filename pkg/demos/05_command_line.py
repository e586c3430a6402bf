"""The ringcert command line, driven from Python through a temporary directory.

Exit codes: 0 ok, 1 usage, 2 parse, 3 hypothesis fails, 4 verification fails.
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path


def run(*args):
    proc = subprocess.run([sys.executable, "-m", "ringcert", *args], capture_output=True, text=True)
    print(f"$ ringcert {' '.join(args)}  -> exit {proc.returncode}")
    for stream in (proc.stdout, proc.stderr):
        if stream.strip():
            print("   " + stream.strip().replace("\n", "\n   "))
    return proc


with tempfile.TemporaryDirectory() as tmp:
    d = Path(tmp)
    inst, cert = str(d / "inst.json"), str(d / "cert.json")
    run("gen", "--ring", "Z/4", "-p", "3", "-q", "6", "-n", "3", "--seed", "11",
        "--require-hypothesis", "-o", inst)
    print(Path(inst).read_text())
    run("check", inst)
    run("certify", inst, "-o", cert)
    print(Path(cert).read_text())
    run("verify", inst, cert)

    edited = json.loads(Path(cert).read_text())
    edited["m"] += 1
    Path(cert).write_text(json.dumps(edited))
    run("verify", inst, cert)

    ident = str(d / "ident.json")
    Path(ident).write_text(json.dumps({"ring": "Z", "rows": [[1, 0], [0, 1]], "partition": [[1], [2]]}))
    run("certify", ident)
