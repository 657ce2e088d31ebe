use std::sync::OnceLock;

use proptest::prelude::*;

use cyclonum_core::closed_forms::half_k;
use cyclonum_core::oracle::{count_by_coset, full_table, TableMethod};
use cyclonum_core::rank::{binom_mod_p, build_matrix, rank_ffield};
use cyclonum_core::{algebra, build_context, CycloParams, ExtensionContext, Limits};

const TRIPLES: [(u32, u32, u32); 8] = [
    (2, 1, 3),
    (3, 1, 3),
    (2, 2, 2),
    (5, 1, 2),
    (7, 1, 2),
    (3, 2, 2),
    (2, 1, 5),
    (2, 3, 2),
];

fn contexts() -> &'static [ExtensionContext] {
    static CACHE: OnceLock<Vec<ExtensionContext>> = OnceLock::new();
    CACHE.get_or_init(|| {
        TRIPLES
            .iter()
            .map(|&(p, n, r)| build_context(p, n, r, None, &Limits::default()).unwrap())
            .collect()
    })
}

fn context() -> impl Strategy<Value = &'static ExtensionContext> {
    (0..TRIPLES.len()).prop_map(|i| &contexts()[i])
}

fn exact_binomial(n: u128, m: u128) -> u128 {
    (0..m).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

proptest! {
    #[test]
    fn table_arithmetic_matches_schoolbook(c in context(), x in any::<u64>(), y in any::<u64>(), e in 0u64..10_000) {
        let x = c.from_encoding((x % c.size()) as u32).unwrap();
        let y = c.from_encoding((y % c.size()) as u32).unwrap();
        prop_assert_eq!(c.mul(x, y), c.mul_schoolbook(x, y));
        prop_assert_eq!(c.pow(x, e), c.pow_schoolbook(x, e));
        prop_assert_eq!(c.add(x, y), c.add_digits(x, y));
        prop_assert_eq!(c.add(c.sub(x, y), y), x);
    }

    #[test]
    fn field_axioms(c in context(), i in any::<u64>(), j in any::<u64>(), l in any::<u64>()) {
        let [x, y, z] = [i, j, l].map(|t| c.from_encoding((t % c.size()) as u32).unwrap());
        prop_assert_eq!(c.mul(x, c.add(y, z)), c.add(c.mul(x, y), c.mul(x, z)));
        prop_assert_eq!(c.mul(c.mul(x, y), z), c.mul(x, c.mul(y, z)));
        if !x.is_zero() {
            prop_assert_eq!(c.mul(x, c.inv(x).unwrap()), c.one());
        }
    }

    #[test]
    fn norm_is_multiplicative_into_base(c in context(), i in 1u64.., j in 1u64..) {
        let x = c.omega_pow(i % (c.size() - 1));
        let y = c.omega_pow(j % (c.size() - 1));
        let nx = c.norm(x);
        prop_assert!(c.subfield().contains(nx));
        prop_assert_eq!(c.norm(c.mul(x, y)), c.mul(nx, c.norm(y)));
        prop_assert_eq!(nx, c.pow(x, c.k()));
    }

    #[test]
    fn dlog_inverts_power(c in context(), j in any::<u64>()) {
        let j = j % (c.size() - 1);
        prop_assert_eq!(c.dlog(c.omega_pow(j)).unwrap(), j);
    }

    #[test]
    fn binomials_follow_exact_values(n in 0u128..60, m in 0u128..60, pi in 0usize..5) {
        let p = [2u32, 3, 5, 7, 11][pi];
        prop_assume!(m <= n);
        let exact = exact_binomial(n, m) % p as u128;
        prop_assert_eq!(binom_mod_p(n, m, p).unwrap() as u128, exact);
    }

    #[test]
    fn half_k_is_ceiling(qi in 0usize..8, r in 2u32..12) {
        let q = [2u64, 3, 4, 5, 7, 8, 9, 11][qi];
        let k = (q.pow(r) - 1) / (q - 1);
        let h = half_k(q, r).unwrap();
        prop_assert_eq!(h.k, k as u128);
        prop_assert_eq!(h.value, k.div_ceil(2) as u128);
    }

    #[test]
    fn gcd_divides_both(a in 0u64..100_000, b in 0u64..100_000) {
        let g = algebra::gcd(a, b);
        if g > 0 {
            prop_assert_eq!(a % g, 0);
            prop_assert_eq!(b % g, 0);
            prop_assert_eq!(algebra::gcd(a / g, b / g), 1);
        } else {
            prop_assert_eq!((a, b), (0, 0));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_ignores_row_order(c in context(), a in any::<u64>(), b in any::<u64>(), seed in any::<u64>()) {
        let params = CycloParams::new(c, a % c.e(), b % c.e()).unwrap();
        let m = build_matrix(c, params, 400).unwrap();
        let mut perm: Vec<usize> = (0..m.size()).collect();
        let mut s = seed;
        for i in (1..perm.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let rank = rank_ffield(c, &m);
        prop_assert_eq!(rank_ffield(c, &m.permute_rows(&perm)), rank);
        prop_assert_eq!(c.k() - rank as u64, count_by_coset(c, params));
    }

    #[test]
    fn table_totals_and_symmetry(c in context()) {
        let coset = full_table(c, TableMethod::Coset).unwrap();
        let norm = full_table(c, TableMethod::Norm).unwrap();
        prop_assert_eq!(coset.total(), c.size() - 2);
        for params in CycloParams::all(c) {
            prop_assert_eq!(coset.get(params), norm.get(params));
            // (a,b) = (-a, b-a)
            let e = c.e();
            let swapped = CycloParams::new(c, (e - params.a) % e, (params.b + e - params.a) % e).unwrap();
            prop_assert_eq!(coset.get(params), coset.get(swapped));
        }
    }
}
