use bisum_core::decide::{decide, verify};
use bisum_core::expr::{parse_poly, parse_ratfunc};
use bisum_core::gcd::gcd_bpoly;
use bisum_core::{BPoly, RatFunc};
use proptest::prelude::*;

fn poly(deg: u32) -> impl Strategy<Value = BPoly> {
    let n = ((deg + 1) * (deg + 2) / 2) as usize;
    prop::collection::vec(-4i64..=4, n).prop_map(move |cs| {
        let mut ts = Vec::new();
        let mut k = 0;
        for i in 0..=deg {
            for j in 0..=deg - i {
                ts.push((cs[k], i, j));
                k += 1;
            }
        }
        BPoly::from_i64_terms(&ts)
    })
}

fn nonzero_poly(deg: u32) -> impl Strategy<Value = BPoly> {
    poly(deg).prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gcd_divides_and_keeps_common_factor(
        a in nonzero_poly(2), b in nonzero_poly(2), c in nonzero_poly(2)
    ) {
        let (ac, bc) = (&a * &c, &b * &c);
        let g = gcd_bpoly(&ac, &bc).unwrap();
        prop_assert!(ac.div_exact(&g).is_some());
        prop_assert!(bc.div_exact(&g).is_some());
        prop_assert!(g.div_exact(&c).is_some());
    }

    #[test]
    fn shifts_compose(p in poly(3), m in -3i64..=3, n in -3i64..=3) {
        prop_assert_eq!(p.shift(m, n).shift(-m, -n), p.clone());
        prop_assert_eq!(p.shift(m, 0).shift(0, n), p.shift(m, n));
    }

    #[test]
    fn display_parses_back(p in poly(3)) {
        prop_assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn differences_are_summable(
        gn in poly(1), gd in nonzero_poly(2), hn in poly(1), hd in nonzero_poly(2)
    ) {
        let g = RatFunc::new(gn, gd).unwrap();
        let h = RatFunc::new(hn, hd).unwrap();
        let f = &g.delta_x() + &h.delta_y();
        let d = decide(&f).unwrap();
        prop_assert!(d.summable, "{}", f);
        let (g2, h2) = (d.g.unwrap(), d.h.unwrap());
        prop_assert!(verify(&f, &g2, &h2));
        let text = f.to_string();
        prop_assert_eq!(parse_ratfunc(&text).unwrap(), f);
    }
}
