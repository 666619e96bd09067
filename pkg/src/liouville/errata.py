"""Notes attached to reports wherever an affected quantity appears."""

FLOOR_PLACEMENT = (
    "omega_k: the approximation exponent printed as floor(10^(nu*s_k)*s_k) does not match "
    "the recurrence s_{k+1} = floor(10^(nu*s_k))*s_k + 1; this tool uses "
    "omega_k = floor(10^(nu*s_k)) = (s_{k+1}-1)/s_k, for which the tail bound holds "
    "with margin and lambda_k -> nu."
)

INFIMUM_SUPREMUM = (
    "nu-Liouville class: the set of admissible nu* is downward closed, so its infimum is 0 "
    "whenever it is non-empty; the classifying quantity is read as the threshold "
    "lambda_k = log(omega_k)/log(q_k) (a supremum reading). Both are reported."
)

CLAUSE_III = (
    "admissibility clause (iii) is applied as written (P' = 0 implies Q' != 0 and R != 0); "
    "this rejects (n, n, X), so the pattern n^(n^xi) is accepted only through its own "
    "corollary rule, and clause (v) is never the only violated clause."
)

LEMMA1_INDEX = "Icen bound: the exponent sum (l_1 + ... + l_k) is taken over all n factors."
