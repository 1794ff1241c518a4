"""Regenerate src/wavelet/filters.rs from PyWavelets."""
import pywt

FAMILIES = [
    ("Haar", "haar"), ("Db2", "db2"), ("Db3", "db3"), ("Db4", "db4"),
    ("Bior13", "bior1.3"), ("Bior15", "bior1.5"), ("Bior22", "bior2.2"),
    ("Bior24", "bior2.4"), ("Bior31", "bior3.1"),
    ("Coif1", "coif1"), ("Coif2", "coif2"), ("Coif3", "coif3"),
]


def table(name, values):
    body = "\n".join(f"    {v!r}," for v in values)
    return f"const {name}: [f64; {len(values)}] = [\n{body}\n];\n"


out = ["// Generated by tools/gen_filters.py from PyWavelets " + pywt.__version__ + ". Do not edit.\n",
       "use super::filters::FilterBank;\n"]
for ident, name in FAMILIES:
    w = pywt.Wavelet(name)
    up = ident.upper()
    for part in ("dec_lo", "dec_hi", "rec_lo", "rec_hi"):
        vals = [float(v) + 0.0 for v in getattr(w, part)]
        out.append(table(f"{up}_{part.upper()}", vals))
    out.append(
        f"pub(super) const {up}: FilterBank = FilterBank {{\n"
        f"    dec_lo: &{up}_DEC_LO,\n    dec_hi: &{up}_DEC_HI,\n"
        f"    rec_lo: &{up}_REC_LO,\n    rec_hi: &{up}_REC_HI,\n}};\n")
print("\n".join(out), end="")
