use std::process::Command;

use eldg::harness::{convergence_order, fmt_sci, problem_1d, problem_2d, ProblemId, RunConfig};
use proptest::prelude::*;

const H: f64 = 1e-5;

fn exact_1d(id: ProblemId) -> Option<(eldg::harness::Problem1D, usize)> {
    let p = problem_1d(id).ok()?;
    p.exact.as_ref()?;
    let n = p.n_components;
    Some((p, n))
}

// U_t + (A U)_x - F by central differences on the exact solution.
#[test]
fn registry_exact_solutions_solve_their_equations() {
    for id in ProblemId::ALL {
        let Some((p, n)) = exact_1d(id) else { continue };
        let e = p.exact.as_ref().unwrap();
        let (lo, hi) = p.domain;
        let mut worst: f64 = 0.0;
        let mut checked = 0;
        for i in 0..37 {
            let x = lo + (hi - lo) * (i as f64 + 0.31) / 37.0;
            for &t in &[0.13, 0.71] {
                let at = |x: f64, t: f64| {
                    let mut v = vec![0.0; n];
                    e(x, t, &mut v);
                    v
                };
                let (xp, xm) = (at(x + H, t), at(x - H, t));
                if xp.iter().zip(&xm).any(|(a, b)| (a - b).abs() > 1e-2) {
                    continue; // stencil straddles a jump
                }
                let flux = |x: f64| {
                    let (a, _) = p.flux_and_source(x, t);
                    let u = at(x, t);
                    (0..n).map(|r| (0..n).map(|c| a[r][c] * u[c]).sum::<f64>()).collect::<Vec<_>>()
                };
                let (fp, fm) = (flux(x + H), flux(x - H));
                let (tp, tm) = (at(x, t + H), at(x, t - H));
                let (_, src) = p.flux_and_source(x, t);
                for r in 0..n {
                    let res = (tp[r] - tm[r]) / (2.0 * H) + (fp[r] - fm[r]) / (2.0 * H) - src[r];
                    worst = worst.max(res.abs());
                }
                checked += 1;
            }
        }
        assert!(checked > 40, "{id:?}: only {checked} points");
        assert!(worst < 1e-6, "{id:?}: residual {worst:e}");
    }
}

#[test]
fn registry_2d_exact_solutions_solve_their_equations() {
    for id in ProblemId::ALL {
        let Ok(p) = problem_2d(id) else { continue };
        let Some(e) = p.exact.as_ref() else { continue };
        let n = p.n_components;
        let at = |x: f64, y: f64, t: f64| {
            let mut v = vec![0.0; n];
            e(x, y, t, &mut v);
            v
        };
        let apply = |m: &[Vec<f64>], u: &[f64]| (0..n).map(|r| (0..n).map(|c| m[r][c] * u[c]).sum::<f64>()).collect::<Vec<_>>();
        let fx = |x: f64, y: f64, t: f64| apply(&p.matrices(x, y).0, &at(x, y, t));
        let gy = |x: f64, y: f64, t: f64| apply(&p.matrices(x, y).1, &at(x, y, t));
        let (xl, xh) = p.domain_x;
        let (yl, yh) = p.domain_y;
        let mut worst: f64 = 0.0;
        for i in 0..9 {
            for j in 0..9 {
                let x = xl + (xh - xl) * (i as f64 + 0.37) / 9.0;
                let y = yl + (yh - yl) * (j as f64 + 0.61) / 9.0;
                let t = 0.27;
                let (tp, tm) = (at(x, y, t + H), at(x, y, t - H));
                let (ap, am) = (fx(x + H, y, t), fx(x - H, y, t));
                let (bp, bm) = (gy(x, y + H, t), gy(x, y - H, t));
                for r in 0..n {
                    let res = (tp[r] - tm[r] + ap[r] - am[r] + bp[r] - bm[r]) / (2.0 * H);
                    worst = worst.max(res.abs());
                }
            }
        }
        assert!(worst < 1e-6, "{id:?}: residual {worst:e}");
    }
}

#[test]
fn one_and_two_dimensional_ids_are_disjoint() {
    for id in ProblemId::ALL {
        assert!(problem_1d(id).is_ok() != problem_2d(id).is_ok(), "{id:?}");
        assert_eq!(id.as_str().parse::<ProblemId>().unwrap(), id);
    }
}

#[test]
fn c_style_numbers() {
    assert_eq!(fmt_sci(1.17e-7), "1.170000e-07");
    assert_eq!(fmt_sci(-2.5), "-2.500000e+00");
    assert_eq!(fmt_sci(0.0), "0.000000e+00");
    assert_eq!(fmt_sci(6.02e123), "6.020000e+123");
}

proptest! {
    #[test]
    fn formatted_numbers_read_back(v in -1e300f64..1e300) {
        let s = fmt_sci(v);
        let (mant, exp) = s.split_once('e').unwrap();
        prop_assert_eq!(mant.trim_start_matches('-').len(), 8);
        prop_assert!(exp.len() >= 3 && (exp.starts_with('+') || exp.starts_with('-')));
        let back: f64 = s.parse().unwrap();
        prop_assert!((back - v).abs() <= 5e-7 * v.abs());
    }

    #[test]
    fn order_of_power_law_is_its_exponent(p in 0.5f64..4.0, c in 1e-3f64..1e3, n in 4usize..200) {
        let e = |m: usize| c * (m as f64).powf(-p);
        let got = convergence_order(e(n), e(2 * n), n, 2 * n).unwrap();
        prop_assert!((got - p).abs() < 1e-9);
    }
}

fn eldg(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_eldg")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn cli_writes_manifest_and_csv() {
    let (code, out) = eldg(&["converge", "--problem", "wave-sin", "--nx", "10", "--nx", "20", "--cfl", "0.3", "--tfinal", "0.2"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    let manifest = lines.next().unwrap();
    assert!(manifest.starts_with("# command=converge problem=wave-sin"), "{manifest}");
    assert!(manifest.contains("nx=10;20"), "{manifest}");
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 2);
    for r in &rows {
        assert_eq!(r.len(), header.len());
    }
    let l1 = header.iter().position(|h| h.contains("l1")).unwrap();
    let e: Vec<f64> = rows.iter().map(|r| r[l1].parse().unwrap()).collect();
    assert!(e[1] < e[0] / 3.0, "{e:?}");
}

#[test]
fn cli_exit_codes() {
    let tiny = ["--nx", "10", "--tfinal", "0.05"];
    let ok: Vec<&str> = ["solve", "--problem", "wave-sin"].iter().chain(&tiny).copied().collect();
    assert_eq!(eldg(&ok).0, 0);
    for bad in [
        vec!["solve", "--problem", "nope"],
        vec!["solve", "--problem", "wave-sin", "--degree", "9"],
        vec!["solve", "--problem", "wave-sin", "--cfl", "-1"],
        vec!["solve", "--problem", "wave-sin", "--limiter-m", "lots"],
        vec!["solve", "--problem", "wave-sin", "--rk", "rk3"],
        vec!["teleport"],
    ] {
        assert_eq!(eldg(&bad).0, 2, "{bad:?}");
    }
    let inverted = ["solve", "--problem", "wave-variable", "--scheme", "eldg1", "--nx", "20", "--cfl", "10", "--tfinal", "5"];
    assert_eq!(eldg(&inverted).0, 3);
}

#[test]
fn default_config_is_valid_for_every_problem() {
    for id in ProblemId::ALL {
        RunConfig::new(id).validate().unwrap();
    }
}

#[test]
fn long_time_exact_solutions_stay_periodic() {
    for id in [ProblemId::WaveSin, ProblemId::WaveGauss, ProblemId::WaveStep] {
        let p = problem_1d(id).unwrap();
        let e = p.exact.as_ref().unwrap();
        let period = p.domain.1 - p.domain.0;
        let (mut a, mut b) = ([0.0; 2], [0.0; 2]);
        for i in 0..50 {
            let x = p.domain.0 + period * (i as f64 + 0.17) / 50.0;
            e(x, 0.3, &mut a);
            e(x, 0.3 + 29.0 * period, &mut b);
            assert!(max_gap(&a, &b) < 1e-9, "{id:?} at x={x}");
        }
    }
}

fn max_gap(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
