//! Algebra files, the catalog, search and reports.

use std::collections::BTreeSet;

use rbn_core::axioms::check_n_jacobi;
use rbn_core::operators::check_rota_baxter;
use rbn_core::scalar::{int, Scalar};
use rbn_core::workbench::catalog::{by_name, catalog, NAMES};
use rbn_core::workbench::format::{load, parse_algebra, render_algebra, save, FormatError, ReportFile};
use rbn_core::workbench::search::{search, Found, SearchSpec, Strategy, Target};
use rbn_core::workbench::selftest::check_claim;
use rbn_core::{LinearForm, LinearMap, Symmetry, Vector};

#[test]
fn catalog_files_round_trip_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    for alg in catalog() {
        let path = dir.path().join(format!("{}.json", alg.name));
        save(&alg, &path).unwrap();
        let first = std::fs::read_to_string(&path).unwrap();
        let loaded = load(&path).unwrap();
        assert_eq!(loaded, alg);
        save(&loaded, &path).unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), first, "{}", alg.name);
    }
    assert_eq!(catalog().len(), NAMES.len());
}

#[test]
fn a4_file() {
    let text = render_algebra(&by_name("a4").unwrap());
    let alg = parse_algebra(&text).unwrap();
    let t = alg.product("bracket").unwrap();
    assert_eq!(t.symmetry(), Symmetry::Skew);
    assert_eq!(t.entries().len(), 4);
    assert_eq!(t.basis_product(&[1, 2, 3]), Vector::basis(4, 0));
    assert_eq!(alg.claims("bracket").collect::<Vec<_>>(), ["3lie"]);
}

#[test]
fn malformed_files() {
    let text = render_algebra(&by_name("heisenberg_line").unwrap());
    let decimal = text.replacen("\"1/2\"", "\"0.5\"", 1);
    assert_ne!(decimal, text);
    let err = parse_algebra(&decimal).unwrap_err();
    assert!(matches!(err, FormatError::Rational { ref input, .. } if input == "0.5"), "{err}");

    let extra = text.replacen("\"dimension\"", "\"colour\": 1,\n  \"dimension\"", 1);
    assert!(matches!(parse_algebra(&extra).unwrap_err(), FormatError::Schema { .. }));
    let wrong = text.replacen("rbn-algebra", "rbn-report", 1);
    assert!(matches!(parse_algebra(&wrong).unwrap_err(), FormatError::Version { .. }));
}

#[test]
fn catalog_claims_hold() {
    let a4 = by_name("a4").unwrap();
    assert_eq!(a4.product("bracket").unwrap().basis_product(&[1, 2, 3]), Vector::basis(4, 0));
    for alg in catalog() {
        for (product, claims) in alg.all_claims() {
            for claim in claims {
                let r = check_claim(alg.product(product).unwrap(), claim).unwrap();
                assert!(r.passed(), "{}.{product} {claim}", alg.name);
            }
        }
    }
    let comp = by_name("componentwise3").unwrap();
    assert!(check_rota_baxter(comp.product("mul").unwrap(), comp.map("P").unwrap(), &int(1)).unwrap().passed());
}

fn maps(out: &[rbn_core::workbench::search::Certified]) -> Vec<LinearMap> {
    out.iter()
        .map(|c| match &c.object {
            Found::Map(m) => m.clone(),
            Found::Form(_) => panic!("expected a map"),
        })
        .collect()
}

fn forms(out: &[rbn_core::workbench::search::Certified]) -> Vec<LinearForm> {
    out.iter()
        .map(|c| match &c.object {
            Found::Form(f) => f.clone(),
            Found::Map(_) => panic!("expected a form"),
        })
        .collect()
}

#[test]
fn nonabelian_operator_search_matches_hand_solution() {
    let nab = by_name("nonabelian2").unwrap();
    let out = search(&nab, &SearchSpec::new(Target::RbOperator, "bracket")).unwrap();
    let found: BTreeSet<Vec<Scalar>> = maps(&out.results)
        .iter()
        .map(|p| vec![p.entry(0, 0).clone(), p.entry(1, 0).clone(), p.entry(0, 1).clone(), p.entry(1, 1).clone()])
        .collect();

    // P e1 = a e1 + b e2, P e2 = c e1 + d e2 and [e1, e2] = e2 give
    // (a + d) c = 0 and ad - bc = (a + d) d
    let grid = [-1i64, 0, 1];
    let mut expected = BTreeSet::new();
    for a in grid {
        for b in grid {
            for c in grid {
                for d in grid {
                    if (a + d) * c == 0 && a * d - b * c == (a + d) * d {
                        expected.insert(vec![int(a), int(b), int(c), int(d)]);
                    }
                }
            }
        }
    }
    assert_eq!(found, expected);
    assert_eq!(found.len(), 15);

    let c_d_zero = found.iter().filter(|v| v[2] == int(0) && v[3] == int(0) && v.iter().any(|x| x != &int(0)));
    assert!(c_d_zero.count() >= 1);
    let other = found.iter().filter(|v| v[0] == -v[3].clone() && &v[1] * &v[2] == -(&v[3] * &v[3]) && v[3] != int(0));
    assert!(other.count() >= 1);
    assert!(maps(&out.results).contains(nab.map("P").unwrap()));
    for p in maps(&out.results) {
        assert!(check_rota_baxter(nab.product("bracket").unwrap(), &p, &int(0)).unwrap().passed());
    }
}

#[test]
fn form_searches() {
    let heis = by_name("heisenberg").unwrap();
    let out = search(&heis, &SearchSpec::new(Target::AnnihilatingForm, "bracket")).unwrap();
    let fs = forms(&out.results);
    assert_eq!(fs.len(), 2);
    assert!(fs.contains(&LinearForm::coordinate(3, 0)));
    assert!(fs.contains(&LinearForm::coordinate(3, 1)));

    let a4 = by_name("a4").unwrap();
    assert!(search(&a4, &SearchSpec::new(Target::AnnihilatingForm, "bracket")).unwrap().results.is_empty());

    let mut fd = SearchSpec::new(Target::FdForm, "mul");
    assert!(search(&by_name("trunc_poly4").unwrap(), &fd).is_err());
    fd.derivation = Some("D".into());
    let out = search(&by_name("trunc_poly4").unwrap(), &fd).unwrap();
    assert!(forms(&out.results).contains(&LinearForm::coordinate(4, 0)));
}

#[test]
fn random_search_is_seeded() {
    let nab = by_name("nonabelian2").unwrap();
    let mut spec = SearchSpec::new(Target::RbOperator, "bracket");
    spec.strategy = Strategy::Random { seed: 11 };
    spec.max_candidates = 30;
    let a = maps(&search(&nab, &spec).unwrap().results);
    let b = maps(&search(&nab, &spec).unwrap().results);
    assert_eq!(a, b);
    spec.max_candidates = 10;
    let out = search(&nab, &SearchSpec { strategy: Strategy::Grid, ..spec }).unwrap();
    assert!(out.truncated);
    assert_eq!(out.candidates, 10);
}

#[test]
fn reports_are_deterministic() {
    let a4 = by_name("a4").unwrap();
    let render = || {
        let mut rep = ReportFile::new("verify", "a4");
        rep.push(&check_n_jacobi(a4.product("bracket").unwrap()).unwrap(), a4.basis());
        let naive = rbn_core::inheritance::naive_bracket(a4.product("bracket").unwrap(), a4.map("D").unwrap()).unwrap();
        rep.push(&check_n_jacobi(&naive).unwrap(), a4.basis());
        rep.render()
    };
    let text = render();
    assert_eq!(text, render());
    let parsed = ReportFile::parse(&text).unwrap();
    assert_eq!(parsed.checks.len(), 2);
    assert!(parsed.checks[1].counterexample.is_some());
}
