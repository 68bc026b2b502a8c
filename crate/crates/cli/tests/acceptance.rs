//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use symplectic_dirac::dirac_cp1::{
    a_coeff, assemble_closed_form, assemble_from_definition, charpoly_exact, norm_growth_row,
    operator_size, p_numeric, spectrum, spectrum_of,
};
use symplectic_dirac::intertwiners::{hom_space, hom_space_oracle};
use symplectic_dirac::verify::{ladder_commutator_residual, oscillator_residual};
use symplectic_dirac::Exact;

const ASSEMBLY_FLOAT_TOL: f64 = 1e-12;
const SPECTRAL_TOL: f64 = 1e-10;
const P_OFF_DIAGONAL_TOL: f64 = 1e-10;
const K3_TOL: f64 = 1e-12;
const K5_TOL: f64 = 1e-10;
const NORM_SLACK: f64 = 1e-12;

const ASSEMBLY_BUDGET: Duration = Duration::from_secs(10);
const SPECTRAL_BUDGET: Duration = Duration::from_secs(30);
const NORM_BUDGET: Duration = Duration::from_secs(60);

struct Verdict {
    passed: bool,
    detail: String,
}

fn verdict(passed: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        passed,
        detail: detail.into(),
    }
}

fn odd(lo: u32, hi: u32) -> impl Iterator<Item = u32> {
    (lo..=hi).filter(|k| k % 2 == 1)
}

fn max_gap(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn timed(budget: Option<Duration>, f: impl FnOnce() -> Verdict) -> Verdict {
    let start = Instant::now();
    let v = f();
    let elapsed = start.elapsed();
    let in_budget = budget.is_none_or(|b| elapsed <= b);
    let budget_note = budget.map_or(String::new(), |b| format!(" (budget {}s)", b.as_secs()));
    verdict(
        v.passed && in_budget,
        format!("{}; {:.2}s{budget_note}", v.detail, elapsed.as_secs_f64()),
    )
}

fn assembly_equivalence() -> Verdict {
    let mut exact_ok = true;
    let mut worst: f64 = 0.0;
    for k in odd(1, 31) {
        let (d, dt) = assemble_from_definition::<Exact>(k).unwrap();
        let (cd, cdt) = assemble_closed_form::<Exact>(k).unwrap();
        exact_ok &= d.matches(&cd, 0.0) && dt.matches(&cdt, 0.0);
        let (d, dt) = assemble_from_definition::<f64>(k).unwrap();
        let (cd, cdt) = assemble_closed_form::<f64>(k).unwrap();
        worst = worst.max(d.max_deviation(&cd)).max(dt.max_deviation(&cdt));
    }
    verdict(
        exact_ok && worst <= ASSEMBLY_FLOAT_TOL,
        format!("k=1..31: exact squares equal={exact_ok}, float max dev {worst:.2e} <= {ASSEMBLY_FLOAT_TOL:e}"),
    )
}

fn spectral_corollaries() -> Verdict {
    let (mut sym, mut coincide, mut kernel_ok) = (0.0_f64, 0.0_f64, true);
    for k in odd(1, 99) {
        let (d, dt) = assemble_closed_form::<f64>(k).unwrap();
        let ev = spectrum(&d).unwrap();
        let negated: Vec<f64> = ev.iter().rev().map(|x| -x).collect();
        sym = sym.max(max_gap(&ev, &negated));
        coincide = coincide.max(max_gap(&ev, &spectrum(&dt).unwrap()));
        let singular = *charpoly_exact(k).unwrap().constant_term() == BigInt::from(0);
        let m = k.div_ceil(2);
        kernel_ok &= singular == (m % 2 == 1);
    }
    verdict(
        sym <= SPECTRAL_TOL && coincide <= SPECTRAL_TOL && kernel_ok,
        format!("k=1..99: symmetry {sym:.2e}, D vs D~ {coincide:.2e} (tol {SPECTRAL_TOL:e}), kernel rule {kernel_ok}"),
    )
}

fn p_closed_form() -> Verdict {
    let (mut off_worst, mut formula_ok, mut a_ok) = (0.0_f64, true, true);
    for k in odd(1, 99) {
        let (diag, off) = p_numeric(k).unwrap();
        off_worst = off_worst.max(off);
        let k = i64::from(k);
        for (l, x) in diag.iter().enumerate() {
            let l = l as i64;
            let expected = (k + 1).pow(2) - 3 * (2 * l + 1).pow(2) - 1;
            formula_ok &= x.round() as i64 == expected;
            let a_next = a_coeff(k as u32, l as u32 + 1).unwrap().square;
            let a_here = a_coeff(k as u32, l as u32).unwrap().square;
            a_ok &= BigInt::from(2) * (a_next - a_here) == BigInt::from(expected);
        }
    }
    verdict(
        off_worst < P_OFF_DIAGONAL_TOL && formula_ok && a_ok,
        format!("k=1..99: off-diagonal {off_worst:.2e} < {P_OFF_DIAGONAL_TOL:e}, closed form {formula_ok}, via a² {a_ok}"),
    )
}

fn determinant_magnitude() -> Verdict {
    let mut ok = true;
    let mut checked = 0;
    let mut sample = String::new();
    for k in odd(1, 99).filter(|k| k.div_ceil(2) % 2 == 0) {
        let m = operator_size(k).unwrap() as u32;
        let p = charpoly_exact(k).unwrap();
        let product: BigInt = (1..=m / 2)
            .map(|r| a_coeff(k, 2 * r - 1).unwrap().square)
            .product();
        ok &= p.abs_constant() == product;
        checked += 1;
        if k == 7 {
            sample = format!("k=7 det={} |det|={product}", p.signed_det());
        }
    }
    verdict(
        ok,
        format!("{checked} values of k with even m: |det| = prod a²_(2r-1) {ok}; {sample}"),
    )
}

fn small_spectra() -> Verdict {
    let s6 = 6f64.sqrt();
    let k3 = spectrum_of(3).unwrap();
    let k3_err = max_gap(&k3, &[-s6, s6]);
    let k5 = spectrum_of(5).unwrap();
    let k5_err = max_gap(&k5, &[-6.0, 0.0, 6.0]);
    let (_, dt3) = assemble_closed_form::<f64>(3).unwrap();
    let (_, dt5) = assemble_closed_form::<f64>(5).unwrap();
    let tilde_err = max_gap(&spectrum(&dt3).unwrap(), &[-s6, s6])
        .max(max_gap(&spectrum(&dt5).unwrap(), &[-6.0, 0.0, 6.0]));
    let ints = |v: &[i64]| v.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>();
    let polys_ok = charpoly_exact(3).unwrap().coeffs == ints(&[-6, 0, 1])
        && charpoly_exact(5).unwrap().coeffs == ints(&[0, -36, 0, 1]);
    verdict(
        k3_err <= K3_TOL && k5_err <= K5_TOL && tilde_err <= K5_TOL && polys_ok,
        format!("k=3 err {k3_err:.2e} (tol {K3_TOL:e}), k=5 err {k5_err:.2e} (tol {K5_TOL:e}), D~ err {tilde_err:.2e}, charpolys {polys_ok}"),
    )
}

fn hom_space_oracle_check() -> Verdict {
    let (mut pairs, mut mismatches, mut dim_ok) = (0, 0, true);
    for k in 0..=21u32 {
        let mut total = 0;
        for l in 0..=k + 2 {
            let weight = hom_space::<Exact>(k, l).dim;
            let brute = hom_space_oracle::<Exact>(k, l);
            pairs += 1;
            mismatches += usize::from(weight != brute);
            total += brute;
        }
        let expected = if k % 2 == 1 {
            (k as usize + 1).pow(2) / 2
        } else {
            0
        };
        dim_ok &= total * (k as usize + 1) == expected;
    }
    verdict(
        mismatches == 0 && dim_ok,
        format!(
            "k=0..21, l<=k+2: {pairs} pairs, {mismatches} mismatches; invariant dimension {dim_ok}"
        ),
    )
}

fn clifford_suite() -> Verdict {
    let n1 = ladder_commutator_residual::<Exact>(1, 20);
    let n2 = ladder_commutator_residual::<Exact>(2, 20);
    let osc = oscillator_residual::<Exact>(18);
    let exact = n1.residual == 0.0 && n2.residual == 0.0 && osc.residual == 0.0;
    verdict(
        n1.passed && n2.passed && osc.passed && exact,
        format!(
            "ladder commutator trunc 20: n=1 residual {}, n=2 residual {}; oscillator l<=18 residual {}",
            n1.residual, n2.residual, osc.residual
        ),
    )
}

fn unboundedness() -> Verdict {
    let (mut ok, mut margin) = (true, f64::INFINITY);
    let mut last = None;
    for k in odd(1, 199) {
        let row = norm_growth_row(k).unwrap();
        ok &= row.holds(NORM_SLACK) && row.a_k1 >= row.lower_bound;
        if k > 1 {
            margin = margin.min(row.max_abs_eigenvalue - row.a_k1);
        }
        last = Some(row);
    }
    let last = last.unwrap();
    verdict(
        ok,
        format!(
            "k=1..199: max|λ| >= a_(k,1) >= (k-1)/2 at every k, min margin {margin:.3}; k=199: {:.3} >= {:.3} >= {}",
            last.max_abs_eigenvalue, last.a_k1, last.lower_bound
        ),
    )
}

fn cli_json(jobs: &str) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_sdirac"))
        .args([
            "spectrum", "-k", "1..31", "--format", "json", "--jobs", jobs,
        ])
        .output()
        .expect("binary runs");
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    out.stdout
}

fn cli_determinism() -> Verdict {
    let a = cli_json("1");
    let b = cli_json("1");
    let c = cli_json("8");
    let lines = a.iter().filter(|&&b| b == b'\n').count();
    verdict(
        !a.is_empty() && a == b && a == c,
        format!("spectrum -k 1..31 --format json: {} bytes, {lines} reports, repeat equal {}, jobs 1 vs 8 equal {}", a.len(), a == b, a == c),
    )
}

struct Criterion {
    name: &'static str,
    budget: Option<Duration>,
    run: fn() -> Verdict,
}

fn main() {
    let criteria = [
        Criterion {
            name: "assembly equivalence",
            budget: Some(ASSEMBLY_BUDGET),
            run: assembly_equivalence,
        },
        Criterion {
            name: "spectral corollaries",
            budget: Some(SPECTRAL_BUDGET),
            run: spectral_corollaries,
        },
        Criterion {
            name: "P_k closed form",
            budget: None,
            run: p_closed_form,
        },
        Criterion {
            name: "determinant magnitude",
            budget: None,
            run: determinant_magnitude,
        },
        Criterion {
            name: "small-k spectra",
            budget: None,
            run: small_spectra,
        },
        Criterion {
            name: "Hom-space oracle",
            budget: None,
            run: hom_space_oracle_check,
        },
        Criterion {
            name: "Clifford algebra suite",
            budget: None,
            run: clifford_suite,
        },
        Criterion {
            name: "unboundedness trend",
            budget: Some(NORM_BUDGET),
            run: unboundedness,
        },
        Criterion {
            name: "CLI determinism",
            budget: None,
            run: cli_determinism,
        },
    ];
    let mut failures = 0;
    for (i, c) in criteria.iter().enumerate() {
        let v = timed(c.budget, c.run);
        failures += usize::from(!v.passed);
        println!(
            "{} [{}] {}: {}",
            if v.passed { "PASS" } else { "FAIL" },
            i + 1,
            c.name,
            v.detail
        );
    }
    println!(
        "acceptance: {} passed, {failures} failed",
        criteria.len() - failures
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
