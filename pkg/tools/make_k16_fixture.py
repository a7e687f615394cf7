"""Regenerate fixtures/k16-3col.txt from the GF(16) cubic-residue construction.

The fixture is checked by verify_witness; its validity does not rest on
this script.
"""

from pathlib import Path

from adaptive_ramsey.oracles import cubic_residue_coloring_k16
from adaptive_ramsey.witness_io import format_ramsey_witness

if __name__ == "__main__":
    out = Path(__file__).resolve().parent.parent / "fixtures" / "k16-3col.txt"
    out.write_text(format_ramsey_witness(cubic_residue_coloring_k16()))
    print(f"wrote {out}")
