import subprocess
import sys
from pathlib import Path

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"


def run_script(name, *args):
    proc = subprocess.run(
        [sys.executable, str(SCRIPTS / name), *args], capture_output=True, text=True, check=True
    )
    return proc.stdout


def test_count_permissible_agrees():
    out = run_script("count_permissible.py", "--max-n", "2")
    assert "MISMATCH" not in out
    assert '"1,0",3,3' in out


def test_minuscule_table():
    out = run_script("minuscule_N_table.py", "--max-n", "3")
    assert "n=3 t=1 alcoves=7 max N=19" in out
