use std::sync::Arc;

use maxker::families::for_each_tuple;
use maxker::maxkernel::{
    self, check_report, count_roots_in_extension, fq_independent, is_maximum_kernel, matrix_order, norm_necessary,
    q_sequence, spans_full_space, splitting_field_degree, transfer_check,
};
use maxker::{CompanionMatrix, Elem, Error, FieldCtx, LinearizedPoly, Mat, Method, QState};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn field(spec: &str) -> Arc<FieldCtx> {
    Arc::new(FieldCtx::from_spec(spec).unwrap())
}

fn coprime(n: u32) -> Vec<i64> {
    (1..n.max(2)).filter(|&s| gcd(s, n) == 1).map(|s| s as i64).collect()
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn divisors(m: u64) -> Vec<u64> {
    (1..=m).filter(|d| m.is_multiple_of(*d)).collect()
}

fn random_lower(rng: &mut ChaCha8Rng, ctx: &FieldCtx, k: usize, a0_nonzero: bool) -> Vec<Elem> {
    let mut lower: Vec<Elem> = (0..k).map(|_| ctx.elem(rng.gen_range(0..ctx.order()) as u64).unwrap()).collect();
    if a0_nonzero && lower[0].is_zero() {
        lower[0] = ctx.elem(rng.gen_range(1..ctx.order()) as u64).unwrap();
    }
    lower
}

/// Maximum kernel by counting roots directly.
fn brute_max_kernel(f: &LinearizedPoly) -> bool {
    let k = f.sigma_degree().unwrap() as u32;
    let roots = f.ctx().elements().filter(|&z| f.evaluate(z).is_zero()).count() as u64;
    roots == (f.ctx().q() as u64).pow(k)
}

#[test]
fn all_methods_agree_exhaustively_on_small_fields() {
    for spec in ["2^1^3", "3^1^3", "2^2^3", "2^1^5", "3^2^2", "5^1^2"] {
        let ctx = field(spec);
        let n = ctx.n() as usize;
        for s in coprime(ctx.n()) {
            for k in 1..n {
                if (ctx.order() as u128).pow(k as u32) > 1 << 14 {
                    continue;
                }
                for_each_tuple(&ctx, k, |lower| {
                    let f = LinearizedPoly::monic_from_lower(&ctx, s, lower).unwrap();
                    let want = brute_max_kernel(&f);
                    for method in Method::ALL {
                        assert_eq!(is_maximum_kernel(&f, method).unwrap(), want, "{spec} {f} {method}");
                    }
                });
            }
        }
    }
}

#[test]
fn methods_agree_on_random_polynomials() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for spec in ["2^1^6", "2^1^7", "3^1^5", "2^3^3", "2^2^5", "3^1^4"] {
        let ctx = field(spec);
        let n = ctx.n() as usize;
        let ss = coprime(ctx.n());
        for _ in 0..60 {
            let s = ss[rng.gen_range(0..ss.len())];
            let k = rng.gen_range(1..n);
            let scale = ctx.elem(rng.gen_range(1..ctx.order()) as u64).unwrap();
            let f = LinearizedPoly::monic_from_lower(&ctx, s, &random_lower(&mut rng, &ctx, k, false)).unwrap().scale(scale);
            let want = brute_max_kernel(&f);
            for method in Method::ALL {
                assert_eq!(is_maximum_kernel(&f, method).unwrap(), want, "{spec} {f} {method}");
            }
        }
    }
}

#[test]
fn e0_route_and_recursion_give_the_first_column() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for spec in ["2^1^5", "3^1^4", "2^2^3"] {
        let ctx = field(spec);
        for s in coprime(ctx.n()) {
            for k in 1..ctx.n() as usize {
                let lower = random_lower(&mut rng, &ctx, k, false);
                let a = CompanionMatrix::from_lower(&ctx, s, &lower).unwrap();
                let col = a.product().column(0);
                assert_eq!(a.product_times_e0(), col);
                let f = LinearizedPoly::monic_from_lower(&ctx, s, &lower).unwrap();
                assert_eq!(q_sequence(&f).unwrap(), col);
                let mut state = QState::new(&f).unwrap();
                let mut v = vec![Elem::ZERO; k];
                v[0] = Elem::ONE;
                for i in 1..=ctx.n() as usize {
                    state.advance();
                    v = a.tau(&v);
                    assert_eq!(state.step_index(), i);
                    assert_eq!(state.values(), &v[..]);
                }
            }
        }
    }
}

#[test]
fn product_matches_explicit_frobenius_twists() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let ctx = field("3^1^4");
    for s in coprime(4) {
        let lower = random_lower(&mut rng, &ctx, 3, true);
        let a = CompanionMatrix::from_lower(&ctx, s, &lower).unwrap();
        let mut b = Mat::identity(3);
        for i in 0..4 {
            b = b.mul(&ctx, &a.matrix().frobenius(&ctx, s * i));
        }
        assert_eq!(a.product(), b);
        assert_eq!(a.semilinear_product(s).unwrap(), b);
    }
}

#[test]
fn fixed_points_correspond_to_kernel() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for spec in ["2^1^4", "3^1^3", "2^2^3", "2^1^5"] {
        let ctx = field(spec);
        for s in coprime(ctx.n()) {
            for _ in 0..15 {
                let k = rng.gen_range(1..ctx.n() as usize);
                let lower = random_lower(&mut rng, &ctx, k, true);
                let a = CompanionMatrix::from_lower(&ctx, s, &lower).unwrap();
                let f = LinearizedPoly::monic_from_lower(&ctx, s, &lower).unwrap();
                let fixed = a.fixed_points_basis().unwrap();
                assert_eq!(fixed.len(), f.kernel_dim(), "{spec} {f}");
                assert!(fq_independent(&ctx, &fixed));
                for v in &fixed {
                    assert_eq!(&a.tau(v), v);
                }
            }
        }
    }
}

#[test]
fn fixed_space_exists_exactly_for_identity_products() {
    for spec in ["2^1^4", "3^1^3"] {
        let ctx = field(spec);
        for s in coprime(ctx.n()) {
            for_each_tuple(&ctx, 2, |lower| {
                if lower[0].is_zero() {
                    return;
                }
                let a = CompanionMatrix::from_lower(&ctx, s, lower).unwrap();
                match a.fixed_space() {
                    Ok(basis) => {
                        assert!(a.product().is_identity());
                        assert_eq!(basis.len(), 2);
                        assert!(spans_full_space(&ctx, &basis));
                        assert!(basis.iter().all(|v| a.tau(v) == *v));
                    }
                    Err(e) => {
                        assert_eq!(e, Error::NotOrderN);
                        assert!(!a.product().is_identity());
                    }
                }
            });
        }
    }
}

#[test]
fn norm_condition_is_necessary() {
    for spec in ["2^1^4", "3^1^3", "3^1^4", "5^1^3"] {
        let ctx = field(spec);
        for k in 1..ctx.n() as usize {
            if (ctx.order() as u128).pow(k as u32) > 1 << 14 {
                continue;
            }
            let mut max = 0;
            for_each_tuple(&ctx, k, |lower| {
                let f = LinearizedPoly::monic_from_lower(&ctx, 1, lower).unwrap();
                if is_maximum_kernel(&f, Method::E0).unwrap() {
                    max += 1;
                    assert!(norm_necessary(&f).unwrap(), "{spec} {f}");
                }
            });
            assert!(max > 0);
        }
    }
}

#[test]
fn matrix_order_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let ctx = field("3^1^2");
    for _ in 0..50 {
        let rows: Vec<Vec<Elem>> = (0..2).map(|_| random_lower(&mut rng, &ctx, 2, false)).collect();
        let m = Mat::from_rows(rows);
        if m.determinant(&ctx).is_zero() {
            assert!(matrix_order(&ctx, &m, 1000).is_err());
            continue;
        }
        let mut p = m.clone();
        let mut d = 1;
        while !p.is_identity() {
            p = p.mul(&ctx, &m);
            d += 1;
        }
        assert_eq!(matrix_order(&ctx, &m, 1000).unwrap(), d);
        assert!(matches!(matrix_order(&ctx, &m, d - 1), Err(Error::OrderCapExceeded { .. })) || d == 1);
    }
}

/// Over F_{q^{n d}} the polynomial has all q^{sk} roots exactly when s·ord(B)
/// divides d. For s = 1 this is the classical splitting field F_{q^{nm}}.
#[test]
fn splitting_field_degree_matches_root_counts() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for spec in ["2^1^2", "2^1^3", "3^1^2", "2^2^2", "2^1^5", "2^1^4"] {
        let ctx = field(spec);
        let q = ctx.q() as u64;
        let bits = (ctx.order() as f64).log2();
        for s in coprime(ctx.n()) {
            for _ in 0..12 {
                let k = rng.gen_range(1..ctx.n() as usize);
                let f = LinearizedPoly::monic_from_lower(&ctx, s, &random_lower(&mut rng, &ctx, k, true)).unwrap();
                let d = splitting_field_degree(&f, 100_000).unwrap();
                assert_eq!(d.extension_degree, s as u64 * d.m);
                assert_eq!(d.extension_beyond_q_polynomials, s != 1);
                if bits * d.extension_degree as f64 > 20.0 {
                    continue;
                }
                let full = q.pow(s as u32 * k as u32);
                for e in divisors(d.extension_degree) {
                    let big = FieldCtx::new(ctx.p(), ctx.e(), ctx.n() * e as u32, None).unwrap();
                    let roots = count_roots_in_extension(&f, &big).unwrap();
                    if e == d.extension_degree {
                        assert_eq!(roots, full, "{spec} {f}");
                    } else {
                        assert!(roots < full, "{spec} {f} e={e}");
                    }
                }
            }
        }
    }
}

#[test]
fn splitting_field_needs_nonzero_constant_term() {
    let ctx = field("2^1^4");
    let f = LinearizedPoly::monic_from_lower(&ctx, 1, &[Elem::ZERO, Elem::ONE]).unwrap();
    assert_eq!(splitting_field_degree(&f, 100).unwrap_err(), Error::ZeroConstantTerm);
}

#[test]
fn transfer_between_congruent_s() {
    for (spec, m) in [("2^1^6", 2u32), ("2^1^9", 3), ("2^1^8", 4), ("3^1^4", 2), ("2^2^4", 2)] {
        let ctx = field(spec);
        let n = ctx.n() as i64;
        let sub = ctx.subfield_elements(m).unwrap();
        let ss = coprime(ctx.n());
        let mut checked = 0;
        for &s in &ss {
            for &t in &ss {
                if s == t || (s - t).rem_euclid(m as i64) != 0 {
                    continue;
                }
                for k in 1..n.min(3) as usize {
                    let mut lower = vec![Elem::ZERO; k];
                    let total = sub.len().pow(k as u32);
                    for idx in 0..total {
                        let mut rest = idx;
                        for slot in lower.iter_mut() {
                            *slot = sub[rest % sub.len()];
                            rest /= sub.len();
                        }
                        let out = transfer_check(&ctx, m, &lower, s, t).unwrap();
                        assert!(out.agree, "{spec} m={m} s={s} t={t} {lower:?}");
                        checked += 1;
                    }
                }
            }
        }
        assert!(checked > 0, "{spec} m={m}");
    }
    let ctx = field("2^1^6");
    assert!(transfer_check(&ctx, 2, &[Elem::ONE], 1, 2).is_err());
    assert!(transfer_check(&ctx, 4, &[Elem::ONE], 1, 5).is_err());
    assert!(transfer_check(&ctx, 2, &[ctx.primitive()], 1, 5).is_err());
}

#[test]
fn report_fields_are_consistent() {
    let ctx = field("2^1^4");
    for_each_tuple(&ctx, 2, |lower| {
        let f = LinearizedPoly::monic_from_lower(&ctx, 1, lower).unwrap();
        for method in Method::ALL {
            let r = check_report(&f, method, None).unwrap();
            assert_eq!(r.method, method);
            assert_eq!(r.max_kernel, r.kernel_dim == 2);
            assert_eq!(r.max_kernel, r.b_is_identity);
            assert_eq!(r.splitting_degree, None);
        }
        if !lower[0].is_zero() {
            let r = check_report(&f, Method::Matrix, Some(1000)).unwrap();
            assert_eq!(r.splitting_degree == Some(1), r.max_kernel);
        }
    });
    let v = serde_json::to_value(check_report(&LinearizedPoly::identity(&ctx), Method::E0, None).unwrap()).unwrap();
    assert!(v.get("B_is_identity").is_some());
    assert!(v.get("splitting_degree").is_none());
}

#[test]
fn method_names_round_trip() {
    for method in Method::ALL {
        assert_eq!(method.to_string().parse::<Method>().unwrap(), method);
    }
    assert!("fast".parse::<Method>().is_err());
    assert_eq!(maxkernel::DEFAULT_ORDER_CAP, 1_000_000);
}
