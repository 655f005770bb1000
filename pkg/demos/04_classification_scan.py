"""
Classifying wavenumber pairs
============================

``classify`` combines the kernel certificate, the resonance coefficient and
the transversality determinant into a verdict.  ``scan_pairs`` runs it over
all pairs up to a cutoff.  The same tables come out of ``asymwave scan``.
"""

from collections import Counter

from asymwave import classify, scan_pairs

rep = classify("whitham-inf", 2, 3, {"T": 1.0})
print(rep.verdict, rep.resonance_nhat, rep.transversality_det)

# only two parameters on infinite-depth Babenko: sufficiency cannot be tested
rep = classify("babenko-inf", 2, 3)
print(rep.verdict, rep.resonance_nhat, rep.transversality)

rows = scan_pairs("whitham-inf", 12, {"T": 1.0})
print(len(rows), "pairs:", Counter(r.verdict for r in rows))

# finite-depth Babenko is exploratory: its symbols extend the infinite-depth algebra
for r in scan_pairs("babenko-fin", 6, {"g": 1.0, "kappa": 1.0, "d": 1.0}):
    print(r.k1, r.k2, r.verdict, f"{r.resonance_nhat:.6g}")
