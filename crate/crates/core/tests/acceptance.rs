//! Acceptance criteria 1–9 on the four-line example, its A₁,₂ monodromy and
//! randomized families. Each test prints one PASS/FAIL line.

use gmconn::arrangement::Arrangement;
use gmconn::connection::{
    classify_weights, cohomology_action, eigen_linear_forms, eigen_monomials, formal_connection,
    induced_map, verify_aomoto_chain_map, verify_exp_relation, verify_series_chain_identity,
    EigenFactor, EigenReport, Eigenvalue, Locus, ProjectionData,
};
use gmconn::fixtures;
use gmconn::fox::{
    check_chain_map, phi1, CertTerm, Endomorphism, FoxError, FreeWord, Monodromy,
    RelatorCertificate, UniversalComplex,
};
use gmconn::linalg::{char_poly, parse_matrix, Matrix};
use gmconn::oscomplex::AomotoComplex;
use gmconn::ring::{rat, ExponentVector, LaurentPoly, MultiPoly, Rational, Ring};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn verdict(n: usize, name: &str, failures: &[String]) {
    if failures.is_empty() {
        println!("PASS criterion {n}: {name}");
    } else {
        println!("FAIL criterion {n}: {name}: {}", failures.join("; "));
    }
    assert!(failures.is_empty(), "criterion {n} failed: {failures:?}");
}

fn check(failures: &mut Vec<String>, ok: bool, what: impl Into<String>) {
    if !ok {
        failures.push(what.into());
    }
}

fn x(text: &str) -> Matrix<LaurentPoly> {
    parse_matrix(text, 4).unwrap()
}

fn y(text: &str) -> Matrix<MultiPoly> {
    parse_matrix(text, 4).unwrap()
}

fn monomial(e: [i32; 4]) -> Eigenvalue {
    Eigenvalue::Monomial(ExponentVector::new(e.to_vec()))
}

fn form(c: [i64; 4]) -> Eigenvalue {
    Eigenvalue::LinearForm(c.iter().map(|&v| BigInt::from(v)).collect())
}

fn spectrum(size: usize, factors: Vec<(Eigenvalue, usize)>) -> EigenReport {
    let mut factors: Vec<EigenFactor> = factors
        .into_iter()
        .map(|(value, multiplicity)| EigenFactor {
            value,
            multiplicity,
        })
        .collect();
    factors.sort_by(|a, b| a.value.cmp(&b.value));
    EigenReport { size, factors }
}

fn point(v: &[(i64, i64)]) -> Vec<Rational> {
    v.iter().map(|&(p, q)| rat(p, q)).collect()
}

const DELTA1: &str = "
    x3 - x2*x3, 1 - x3, 1 - x4, 0, 0
    x1*x3 - 1, x1 - x1*x3, 0, 1 - x4, 0
    1 - x2, x1*x2 - 1, 0, 0, 1 - x4
    0, 0, x1 - 1, x2 - 1, x3 - 1";

const MU1: &str = "
    -y2, -y3, -y4, 0, 0
    y1 + y3, -y3, 0, -y4, 0
    -y2, y1 + y2, 0, 0, -y4
    0, 0, y1, y2, y3";

const PHI1: &str = "
    1 - x1 + x1*x2, 1 - x2, 0, 0
    x1 - x1^2, x1, 0, 0
    0, 0, 1, 0
    0, 0, 0, 1";

const PHI2: &str = "
    x1*x2, 0, 0, 0, 0
    x2 - 1, 1, 0, 0, 0
    0, 0, 1 - x1 + x1*x2, 1 - x2, 0
    0, 0, x1 - x1^2, x1, 0
    0, 0, 0, 0, 1";

const OMEGA1: &str = "
    y2, -y2, 0, 0
    -y1, y1, 0, 0
    0, 0, 0, 0
    0, 0, 0, 0";

const OMEGA2: &str = "
    y1 + y2, 0, 0, 0, 0
    y2, 0, 0, 0, 0
    0, 0, y2, -y2, 0
    0, 0, -y1, y1, 0
    0, 0, 0, 0, 0";

fn example_monodromy() -> (UniversalComplex, Monodromy) {
    let p = fixtures::presentation();
    let uc = UniversalComplex::new(&p).unwrap();
    let m = Monodromy::new(
        &p,
        &fixtures::artin_a12(),
        &fixtures::artin_a12_certificate(),
    )
    .unwrap();
    (uc, m)
}

#[test]
fn criterion_1_fox_reconstruction() {
    let mut f = Vec::new();
    let uc = UniversalComplex::new(&fixtures::presentation()).unwrap();
    check(
        &mut f,
        uc.delta0() == &x("x1 - 1, x2 - 1, x3 - 1, x4 - 1"),
        "Δ⁰ differs",
    );
    check(&mut f, uc.delta1() == &x(DELTA1), "Δ¹ differs");
    check(
        &mut f,
        uc.delta0().mat_mul(uc.delta1()).unwrap().is_zero(),
        "Δ⁰·Δ¹ ≠ 0",
    );
    verdict(1, "Fox reconstruction of Δ⁰, Δ¹", &f);
}

#[test]
fn criterion_2_aomoto_reconstruction() {
    let mut f = Vec::new();
    let a = AomotoComplex::new(&fixtures::arrangement());
    let labels: Vec<Vec<usize>> = a.basis().degree(2).to_vec();
    check(
        &mut f,
        labels == vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 3], vec![2, 3]],
        "nbc column order differs",
    );
    check(&mut f, a.mu(0) == &y("y1, y2, y3, y4"), "μ⁰ differs");
    check(&mut f, a.mu(1) == &y(MU1), "μ¹ differs");
    check(
        &mut f,
        a.non_linear_entries().is_empty(),
        "non-linear entries present",
    );
    let uc = UniversalComplex::new(&fixtures::presentation()).unwrap();
    for q in 0..2 {
        check(
            &mut f,
            &uc.delta(q).linear_part() == a.mu(q),
            format!("linear_part(Δ{q}) ≠ μ{q}"),
        );
    }
    verdict(2, "Aomoto reconstruction of μ⁰, μ¹", &f);
}

#[test]
fn criterion_3_monodromy() {
    let mut f = Vec::new();
    let (uc, m) = example_monodromy();
    check(&mut f, m.degree(1) == &x(PHI1), "Φ¹ differs");
    check(&mut f, m.degree(2) == &x(PHI2), "Φ² differs");
    check(
        &mut f,
        check_chain_map(1, uc.delta1(), m.degree(1), m.degree(2)).is_ok(),
        "Δ¹·Φ² ≠ Φ¹·Δ¹",
    );
    check(
        &mut f,
        &uc.delta0().mat_mul(m.degree(1)).unwrap() == uc.delta0(),
        "Δ⁰·Φ¹ ≠ Δ⁰",
    );
    for q in 1..3 {
        check(
            &mut f,
            m.degree(q).at_one().is_identity(),
            format!("Φ{q}(1) ≠ I"),
        );
    }
    verdict(3, "monodromy Φ¹, Φ² of A₁,₂", &f);
}

#[test]
fn criterion_4_formal_connection() {
    let mut f = Vec::new();
    let (uc, m) = example_monodromy();
    let fc = formal_connection(&m.phi).unwrap();
    check(&mut f, fc.degree(1) == &y(OMEGA1), "Ω¹ differs");
    check(&mut f, fc.degree(2) == &y(OMEGA2), "Ω² differs");
    for q in 0..3 {
        let r = verify_exp_relation(m.degree(q), fc.degree(q), 2).unwrap();
        for mm in &r.mismatches {
            f.push(format!(
                "exp relation degree {q} entry ({},{}): Φ(exp y) = {} but exp(Ω) = {}",
                mm.row, mm.col, mm.substituted, mm.exponential
            ));
        }
        if !r.passed() {
            f.push(format!(
                "degree {q}: entries agree through order {:?}, characteristic polynomials agree to order 2: {}",
                r.agrees_through_degree, r.char_polys_agree
            ));
        }
    }
    for q in 0..2 {
        if let Some((d, i, j)) =
            verify_series_chain_identity(uc.delta(q), m.degree(q), m.degree(q + 1), 2).unwrap()
        {
            f.push(format!(
                "series chain identity {q} fails at order {d}, entry ({i},{j})"
            ));
        }
    }
    let a = AomotoComplex::new(&fixtures::arrangement());
    let mu = [a.mu(0).clone(), a.mu(1).clone()];
    check(
        &mut f,
        verify_aomoto_chain_map(&mu, &fc.omega).is_ok(),
        "μ-chain identity fails",
    );
    verdict(4, "formal connection Ω¹, Ω², exp relation to order 2", &f);
}

#[test]
fn criterion_5_eigen_structure() {
    let mut f = Vec::new();
    let (_, m) = example_monodromy();
    let fc = formal_connection(&m.phi).unwrap();
    let x1x2 = monomial([1, 1, 0, 0]);
    let one = monomial([0; 4]);
    let s = form([1, 1, 0, 0]);
    let zero = form([0; 4]);
    let expected = [
        (
            1,
            spectrum(4, vec![(one.clone(), 3), (x1x2.clone(), 1)]),
            spectrum(4, vec![(zero.clone(), 3), (s.clone(), 1)]),
        ),
        (
            2,
            spectrum(5, vec![(one, 3), (x1x2, 2)]),
            spectrum(5, vec![(zero, 3), (s, 2)]),
        ),
    ];
    for (q, mono, lin) in expected {
        match eigen_monomials(m.degree(q)) {
            Ok(r) => check(
                &mut f,
                r == mono,
                format!("Φ{q} spectrum {r}, expected {mono}"),
            ),
            Err(e) => f.push(format!("Φ{q}: {e}")),
        }
        match eigen_linear_forms(fc.degree(q), 7) {
            Ok(r) => check(
                &mut f,
                r == lin,
                format!("Ω{q} spectrum {r}, expected {lin}"),
            ),
            Err(e) => f.push(format!("Ω{q}: {e}")),
        }
    }
    verdict(5, "certified monomial and linear-form spectra", &f);
}

#[test]
fn criterion_6_induced_maps() {
    let mut f = Vec::new();
    let (uc, m) = example_monodromy();
    let fc = formal_connection(&m.phi).unwrap();
    let a = AomotoComplex::new(&fixtures::arrangement());
    let cases = [
        (
            fixtures::xi_nonresonant(),
            parse_matrix::<LaurentPoly>("x1*x2, 0\nx2 - 1, 1", 4).unwrap(),
            parse_matrix::<MultiPoly>("y1 + y2, 0\ny2, 0", 4).unwrap(),
        ),
        (
            fixtures::xi_resonant(),
            x("x1*x2, 0, 0\n0, x1*x2, 1 - x3\n0, 0, 1"),
            y("y1 + y2, 0, 0\n0, y1 + y2, -y3\n0, 0, 0"),
        ),
    ];
    for (k, (xi, phi_bar, omega_bar)) in cases.into_iter().enumerate() {
        let tag = format!("Ξ #{}", k + 1);
        let dx = uc.delta1().mat_mul(&xi).unwrap();
        if !dx.is_zero() {
            let on_locus = fixtures::resonant_locus().restrict_matrix(&dx).is_zero();
            f.push(format!(
                "{tag}: Δ¹·Ξ ≠ 0 in the Laurent ring (entry (1,1) = {}); it vanishes on the resonant subtorus: {on_locus}",
                dx[(0, 0)]
            ));
        }
        let locus = if k == 0 {
            Locus::whole(4)
        } else {
            fixtures::resonant_locus()
        };
        let data = match ProjectionData::on_locus(xi, uc.delta1(), a.mu(1), locus, 11) {
            Ok(d) => d,
            Err(e) => {
                f.push(format!("{tag}: {e}"));
                continue;
            }
        };
        check(
            &mut f,
            data.upsilon() == &data.xi().linear_part(),
            format!("{tag}: Υ ≠ linear_part(Ξ)"),
        );
        match induced_map(data.xi(), m.degree(2)) {
            Ok(r) => check(&mut f, r == phi_bar, format!("{tag}: Φ̄ = {r:?}")),
            Err(e) => f.push(format!("{tag}: Φ̄: {e}")),
        }
        match induced_map(data.upsilon(), fc.degree(2)) {
            Ok(r) => check(&mut f, r == omega_bar, format!("{tag}: Ω̄ = {r:?}")),
            Err(e) => f.push(format!("{tag}: Ω̄: {e}")),
        }
    }
    verdict(6, "induced maps on the two projections", &f);
}

fn action_at(uc: &UniversalComplex, m: &Monodromy, t: &[Rational]) -> Vec<Matrix<Rational>> {
    let deltas: Vec<_> = (0..2).map(|q| uc.delta(q).evaluate(t).unwrap()).collect();
    let phis: Vec<_> = (0..3).map(|q| m.degree(q).evaluate(t).unwrap()).collect();
    cohomology_action(&deltas, &phis).unwrap()
}

#[test]
fn criterion_7_specialization() {
    let mut f = Vec::new();
    let (uc, m) = example_monodromy();
    let k = uc.complex();

    let t = point(&[(2, 1); 4]);
    let r = classify_weights(&k, &t).unwrap();
    check(
        &mut f,
        r.cohomology == vec![0, 0, 2],
        format!("h at (2,2,2,2) = {:?}", r.cohomology),
    );
    check(
        &mut f,
        r.non_resonant && r.top_matches_euler,
        "(2,2,2,2) not non-resonant",
    );
    check(&mut f, r.euler_characteristic.abs() == 2, "|e(M)| ≠ 2");

    let t = point(&[(2, 1), (3, 1), (1, 6), (1, 1)]);
    let r = classify_weights(&k, &t).unwrap();
    check(
        &mut f,
        r.cohomology == vec![0, 1, 3],
        format!("h at (2,3,1/6,1) = {:?}", r.cohomology),
    );
    check(
        &mut f,
        fixtures::resonant_locus().contains(&t),
        "(2,3,1/6,1) off the resonant subtorus",
    );
    let psi = action_at(&uc, &m, &t);
    check(
        &mut f,
        psi[1] == Matrix::from_rows(vec![vec![rat(6, 1)]]),
        format!("Ψ¹ = {:?}", psi[1]),
    );

    for t in [
        point(&[(2, 1); 4]),
        point(&[(3, 1), (5, 1), (2, 1), (7, 1)]),
        point(&[(1, 2), (5, 3), (2, 1), (3, 1)]),
    ] {
        let r = classify_weights(&k, &t).unwrap();
        check(
            &mut f,
            r.non_resonant,
            format!("{t:?} expected non-resonant"),
        );
        let psi = action_at(&uc, &m, &t);
        let cp = char_poly(&psi[2]).unwrap();
        let t1t2 = &t[0] * &t[1];
        let rest = cp
            .deflate(&t1t2)
            .and_then(|c| c.deflate(&Rational::one_of(0)));
        check(
            &mut f,
            psi[2].rows() == 2 && rest.is_some_and(|c| c.degree() == 0),
            format!("Ψ² at {t:?} has char poly {cp}"),
        );
    }
    verdict(7, "specialized cohomology and Ψ", &f);
}

fn random_endomorphism(rng: &mut ChaCha8Rng) -> (Endomorphism, RelatorCertificate) {
    let p = fixtures::presentation();
    let n = p.ngens();
    let m = p.nrelators();
    let mut phi = Endomorphism::identity(n);
    let mut cert = RelatorCertificate::trivial(n, m);
    for _ in 0..rng.gen_range(1..=4) {
        let (psi, psi_cert) = if rng.gen_bool(0.5) {
            (fixtures::artin_a12(), fixtures::artin_a12_certificate())
        } else {
            let g = FreeWord::generator(n, rng.gen_range(0..n));
            let w = if rng.gen_bool(0.5) { g } else { g.inverse() };
            (
                Endomorphism::inner(&w),
                RelatorCertificate::conjugating(&w, m),
            )
        };
        cert = cert.compose(&phi, &psi_cert);
        phi = phi.compose(&psi);
    }
    (phi, cert)
}

#[test]
fn criterion_8_property_suite() {
    let mut f = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for trial in 0..60 {
        let n = rng.gen_range(2..=6);
        let a = Arrangement::random(&mut rng, 2, n);
        let ac = AomotoComplex::new(&a);
        let tag = format!("arrangement #{trial}");
        check(
            &mut f,
            ac.mu(0).mat_mul(ac.mu(1)).unwrap().is_zero(),
            format!("{tag}: μ·μ ≠ 0"),
        );
        let b = ac.betti();
        let alt = b[0] as i64 - b[1] as i64 + b[2] as i64;
        check(
            &mut f,
            alt == ac.basis().euler_characteristic(),
            format!("{tag}: alternating sum {alt}"),
        );
        check(
            &mut f,
            b[0] == 1 && b[1] == a.len(),
            format!("{tag}: betti {b:?}"),
        );
        let h = ac
            .complex()
            .specialize(&vec![rat(0, 1); a.len()])
            .unwrap()
            .cohomology_betti();
        check(&mut f, h == b, format!("{tag}: h at 0 = {h:?}, b = {b:?}"));
    }

    let p = fixtures::presentation();
    let uc = UniversalComplex::new(&p).unwrap();
    for trial in 0..25 {
        let tag = format!("endomorphism #{trial}");
        let (phi, cert) = random_endomorphism(&mut rng);
        let m = match Monodromy::new(&p, &phi, &cert) {
            Ok(m) => m,
            Err(e) => {
                f.push(format!("{tag}: {e}"));
                continue;
            }
        };
        for q in 0..3 {
            check(
                &mut f,
                m.degree(q).at_one().is_identity(),
                format!("{tag}: Φ{q}(1) ≠ I"),
            );
        }
        for q in 0..2 {
            check(
                &mut f,
                check_chain_map(q, uc.delta(q), m.degree(q), m.degree(q + 1)).is_ok(),
                format!("{tag}: chain identity {q}"),
            );
        }
        let fc = match formal_connection(&m.phi) {
            Ok(fc) => fc,
            Err(e) => {
                f.push(format!("{tag}: {e}"));
                continue;
            }
        };
        for q in 0..3 {
            match (
                eigen_monomials(m.degree(q)),
                eigen_linear_forms(fc.degree(q), trial),
            ) {
                (Ok(mono), Ok(lin)) => check(
                    &mut f,
                    mono.log() == lin,
                    format!("{tag}: degree {q}: log {mono} ≠ {lin}"),
                ),
                (a, b) => f.push(format!("{tag}: degree {q}: {:?} / {:?}", a.err(), b.err())),
            }
        }
    }
    verdict(8, "randomized arrangements and endomorphisms", &f);
}

#[test]
fn criterion_9_negative_tests() {
    let mut f = Vec::new();
    let p = fixtures::presentation();
    let phi = fixtures::artin_a12();

    let mut terms = fixtures::artin_a12_certificate().terms().to_vec();
    terms[1][0].sign = -1;
    let bad = RelatorCertificate::new(terms);
    check(
        &mut f,
        matches!(
            bad.validate(&p, &phi),
            Err(FoxError::CertificateInvalid { relator: 2, .. })
        ),
        "sign-flipped certificate accepted",
    );
    let mut terms = fixtures::artin_a12_certificate().terms().to_vec();
    terms[4].push(CertTerm {
        conjugator: FreeWord::generator(4, 0),
        relator: 0,
        sign: 1,
    });
    check(
        &mut f,
        matches!(
            Monodromy::new(&p, &phi, &RelatorCertificate::new(terms)),
            Err(FoxError::CertificateInvalid { relator: 5, .. })
        ),
        "padded certificate accepted",
    );

    let skew = Endomorphism::parse("g1 g2\ng2\ng3\ng4", 4).unwrap();
    check(
        &mut f,
        matches!(
            phi1(&skew),
            Err(FoxError::AbelianizationNotPreserved { generator: 1, .. })
        ),
        "g1 ↦ g1 g2 accepted",
    );

    let uc = UniversalComplex::new(&p).unwrap();
    let (_, m) = example_monodromy();
    let mut corrupted = m.degree(2).clone();
    corrupted[(3, 2)] = corrupted[(3, 2)].plus(&LaurentPoly::var(4, 0));
    match check_chain_map(1, uc.delta1(), m.degree(1), &corrupted) {
        Err(FoxError::ChainIdentityFailed {
            degree: 1,
            row,
            col,
        }) => {
            let lhs = uc.delta1().mat_mul(&corrupted).unwrap();
            let rhs = m.degree(1).mat_mul(uc.delta1()).unwrap();
            check(
                &mut f,
                lhs[(row - 1, col - 1)] != rhs[(row - 1, col - 1)],
                "reported entry agrees",
            );
            check(
                &mut f,
                col == 3,
                format!("reported column {col}, corrupted column 3"),
            );
        }
        other => f.push(format!("corrupted Φ² gave {other:?}")),
    }
    verdict(9, "negative tests", &f);
}
