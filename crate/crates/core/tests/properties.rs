use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use lensbound::farey::{is_farey_edge, minimal_path};
use lensbound::filling::embeds_s4_sum;
use lensbound::homology::{h1_of_lens_sum, hantzsche_double_test, smith_normal_form, IntMatrix};
use lensbound::rational::{ConnectedSum, LensSpace, NegCF, Slope};
use lensbound::tight::{count_tight_formula, enumerate_tight, TightStructure};

fn lens_space(pmax: i64) -> impl Strategy<Value = LensSpace> {
    (2..=pmax)
        .prop_flat_map(|p| (Just(p), 1..p))
        .prop_filter_map("coprime", |(p, q)| LensSpace::new(p, q).ok())
}

fn square(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-6i64..=6, n), n)
}

/// Determinants of all k x k minors, by cofactor expansion.
fn minor_gcd(m: &[Vec<i64>], k: usize) -> BigInt {
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        (k - 1..n)
            .flat_map(|last| {
                subsets(last, k - 1).into_iter().map(move |mut s| {
                    s.push(last);
                    s
                })
            })
            .collect()
    }
    fn det(m: &[Vec<i64>]) -> BigInt {
        if m.is_empty() {
            return BigInt::from(1);
        }
        (0..m.len())
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                BigInt::from(sign * m[0][j]) * det(&minor)
            })
            .sum()
    }
    let n = m.len();
    let mut g = BigInt::zero();
    for rows in subsets(n, k) {
        for cols in subsets(n, k) {
            let sub: Vec<Vec<i64>> = rows.iter().map(|&r| cols.iter().map(|&c| m[r][c]).collect()).collect();
            g = g.gcd(&det(&sub));
        }
    }
    g
}

proptest! {
    #[test]
    fn neg_cf_round_trips(lens in lens_space(5000)) {
        let cf = lens.neg_cf().unwrap();
        prop_assert!(cf.coeffs().iter().all(|&a| a <= -2));
        prop_assert_eq!(cf.eval(), (lens.p(), lens.q()));
    }

    #[test]
    fn cf_coefficients_evaluate_back(coeffs in prop::collection::vec(-7i64..=-2, 1..8)) {
        let cf = NegCF::new(coeffs.clone()).unwrap();
        let (p, q) = cf.eval();
        let again = LensSpace::new(p, q).unwrap().neg_cf().unwrap();
        prop_assert_eq!(again.coeffs(), &coeffs[..]);
    }

    #[test]
    fn snf_diagonal_is_gcd_of_minors(rows in (1usize..=4).prop_flat_map(square)) {
        let m = IntMatrix::from_rows(&rows).unwrap();
        let snf = smith_normal_form(&m);
        prop_assert!(snf.verify(&m));
        // d_1 ... d_k = gcd of k x k minors
        let d = snf.diagonal();
        let mut prefix = BigInt::from(1);
        for k in 1..=rows.len() {
            prefix *= &d[k - 1];
            prop_assert_eq!(prefix.abs(), minor_gcd(&rows, k));
        }
    }

    #[test]
    fn determinant_is_multiplicative(a in square(4), b in square(4)) {
        let (a, b) = (IntMatrix::from_rows(&a).unwrap(), IntMatrix::from_rows(&b).unwrap());
        prop_assert_eq!(a.mul(&b).determinant(), a.determinant() * b.determinant());
    }

    #[test]
    fn doubled_sums_pass_hantzsche(summands in prop::collection::vec(lens_space(60), 1..4)) {
        let doubled = ConnectedSum::new(summands.iter().flat_map(|l| [*l, l.reverse()]));
        let g = h1_of_lens_sum(&doubled);
        prop_assert!(hantzsche_double_test(&g).unwrap().is_some());
        prop_assert_eq!(embeds_s4_sum(&doubled, false).is_yes(), true);
    }

    #[test]
    fn reversal_is_an_involution(lens in lens_space(2000)) {
        prop_assert_eq!(lens.reverse().reverse(), lens);
        prop_assert!(lens.oriented_homeo(&LensSpace::new(lens.p(), lens.q_inverse()).unwrap()));
        prop_assert_eq!(lens.canonical(), LensSpace::new(lens.p(), lens.q_inverse()).unwrap().canonical());
    }

    #[test]
    fn minimal_path_uses_farey_edges(lens in lens_space(3000)) {
        let path = minimal_path(&lens).unwrap();
        prop_assert_eq!(path.first(), Slope::new(-lens.p(), lens.q()).unwrap());
        prop_assert_eq!(path.last(), Slope::ZERO);
        for (a, b) in path.edges() {
            prop_assert!(is_farey_edge(a, b).unwrap());
        }
    }

    #[test]
    fn tight_structures_are_distinct_and_counted(lens in lens_space(120)) {
        let all = enumerate_tight(&lens).unwrap();
        prop_assert_eq!(all.len() as u64, count_tight_formula(&lens).unwrap());
        let mut keys: Vec<Vec<usize>> = all.iter().map(TightStructure::plus_counts).collect();
        keys.dedup();
        prop_assert_eq!(keys.len(), all.len());
    }

    #[test]
    fn json_round_trips(lens in lens_space(200), pick in any::<prop::sample::Index>()) {
        let all = enumerate_tight(&lens).unwrap();
        let t = &all[pick.index(all.len())];
        let text = serde_json::to_string(t).unwrap();
        let back: TightStructure = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, t);
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }
}

#[test]
fn primary_decomposition_is_irrelevant() {
    // L(15,q) has H1 = Z/15 = Z/3 + Z/5; the invariant factors see one cyclic group
    let sum = ConnectedSum::new([LensSpace::new(15, 2).unwrap(), LensSpace::new(15, 13).unwrap()]);
    let g = h1_of_lens_sum(&sum);
    assert_eq!(g.invariant_factors, vec![BigInt::from(15), BigInt::from(15)]);
    let half = hantzsche_double_test(&g).unwrap().unwrap();
    assert_eq!(half.invariant_factors, vec![BigInt::from(15)]);
    // Z/3 + Z/5 + Z/15 = Z/15 + Z/15 as abstract groups
    let mixed = ConnectedSum::new([
        LensSpace::new(3, 1).unwrap(),
        LensSpace::new(5, 2).unwrap(),
        LensSpace::new(15, 4).unwrap(),
    ]);
    assert_eq!(h1_of_lens_sum(&mixed), g);
}
