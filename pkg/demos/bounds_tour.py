"""A tour of the closed-form bounds and their consistency relations."""

from storagecodes.bounds import (
    CASE_ALPHA_EQ_BETA,
    CASE_ALPHA_EQ_R_BETA,
    cutset_bound,
    info_distance_bound,
    linear_locality_distance_bound,
    mbr_point,
    msr_point,
    theorem1_bound,
    theorem2_bound,
    theorem2_rate_bound,
)

print("cutset bound: the most information k nodes can carry after repairs")
for k, r, alpha, beta in [(3, 3, 2, 1), (3, 3, 3, 1), (2, 4, 2, 1)]:
    print(f"  k={k} r={r} alpha={alpha} beta={beta}: m <= {cutset_bound(k, r, alpha, beta)}")

print("\noperating points (both meet the cutset bound with equality):")
for k, r, beta in [(2, 3, 1), (3, 3, 1), (2, 4, 2)]:
    a, m = msr_point(k, r, beta)
    print(f"  MSR  k={k} r={r} beta={beta}: alpha={a}, m={m}")
    a, m = mbr_point(k, r, beta)
    print(f"  MBR  k={k} r={r} beta={beta}: alpha={a}, m={m}")

print("\nlocality-distance tradeoffs:")
print(f"  k=4, r=2, d=2 needs n >= {linear_locality_distance_bound(4, 2, 2)}")
print(f"  n=8, m=8, r=3, alpha=2 allows d <= {info_distance_bound(8, 8, 3, 2)}")

print("\nlocality-rate theorems:")
print(f"  alpha=beta,  n=4, r=3, alpha=1: m <= {theorem1_bound(CASE_ALPHA_EQ_BETA, 4, 3, 1)}"
      "  (met by the [4,3] parity code)")
print(f"  alpha=r*beta, n=4, r=3, alpha=3: m <= {theorem1_bound(CASE_ALPHA_EQ_R_BETA, 4, 3, 3)}"
      "  (met by the n=4 MBR code)")
for n in (3, 4, 5, 6):
    m = theorem2_bound(n, 2, 1)
    print(f"  r=2, n={n}, alpha=2, beta=1: m <= {m}  (rate <= {theorem2_rate_bound(2, 1)})")

print("\nconsistency: with 3 | n and alpha = beta the r=2 bound equals theorem 1:")
for n in (3, 6, 9):
    t2 = theorem2_bound(n, 2, 2)
    t1 = theorem1_bound(CASE_ALPHA_EQ_BETA, n, 2, 2)
    print(f"  n={n}: theorem2 = {t2}, theorem1 = {t1}")
