//! Frozen reference values for the shipped fixtures. The eigenpairs were
//! computed independently by a dense angle grid with bisection (Z) and by
//! eliminating the eigenvalue on the two box faces (H).

use std::path::PathBuf;

use tcpkit::io::read_tensor;
use tcpkit::spectra::{eigen_defect, h_eigenpairs, z_eigenpairs, EigenKind};
use tcpkit::tcp::{enumerate_solutions, TcpInstance};
use tcpkit::{classify, Budget, ClassId, IndexSet, Method, Status, Tensor};

fn fixture(name: &str) -> Tensor {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    read_tensor(&path).unwrap()
}

fn has_pair(pairs: &[tcpkit::EigenPair], lambda: f64, x: [f64; 2]) -> bool {
    pairs.iter().any(|p| (p.lambda - lambda).abs() < 1e-9 && (p.x[0] - x[0]).abs() < 1e-9 && (p.x[1] - x[1]).abs() < 1e-9)
}

#[test]
fn fixture_files_load() {
    let ex31 = fixture("ex31.json");
    assert_eq!(ex31.apply(&[1.0, 1.0]).unwrap(), vec![-15.0, -16.0]);
    let ex32 = fixture("ex32.json");
    assert_eq!(ex32.apply(&[0.0, 1.0]).unwrap(), vec![-1.0, -1.0]);
    assert_eq!(ex32.form(&[1.0, 1.0]).unwrap(), 1.0);
    assert_eq!(fixture("ones.json"), Tensor::filled(3, 2, 1.0).unwrap());
    assert_eq!(fixture("zero.json"), Tensor::zeros(3, 2).unwrap());
    assert_eq!(fixture("diagonal.json"), Tensor::diagonal(3, &[2.0, 3.0]).unwrap());
    assert_eq!(ex31, tcpkit::fixtures::example_31());
    assert_eq!(ex32, tcpkit::fixtures::example_32());
}

#[test]
fn subtensors_of_the_examples() {
    let e1 = IndexSet::new(vec![0], 2).unwrap();
    let e2 = IndexSet::new(vec![1], 2).unwrap();
    assert_eq!(fixture("ex31.json").principal_subtensor(&e1).unwrap().coeffs(), &[-16.0]);
    assert_eq!(fixture("ex32.json").principal_subtensor(&e2).unwrap().coeffs(), &[-1.0]);
    let full = IndexSet::full(2);
    assert_eq!(fixture("ex32.json").principal_subtensor(&full).unwrap(), fixture("ex32.json"));
}

#[test]
fn example_32_z_spectrum() {
    let pairs = z_eigenpairs(&fixture("ex32.json"), &Budget::default()).unwrap();
    assert_eq!(pairs.len(), 2, "{pairs:?}");
    assert!(has_pair(&pairs, -0.289464489543174, [0.638434029322937, -0.769676549079208]));
    assert!(has_pair(&pairs, 0.289464489543175, [-0.638434029322938, 0.769676549079208]));
    // no eigenvector is sign-definite, so the positivity claim holds vacuously
    assert!(pairs.iter().all(|p| !p.is_nonnegative() && !p.is_nonpositive()));
}

#[test]
fn example_32_has_no_real_h_pairs() {
    assert!(h_eigenpairs(&fixture("ex32.json"), &Budget::default()).unwrap().is_empty());
}

#[test]
fn example_31_spectra() {
    let a = fixture("ex31.json");
    let z = z_eigenpairs(&a, &Budget::default()).unwrap();
    assert_eq!(z.len(), 6);
    for (lambda, x) in [
        (-10.160809962796307, [0.683728202393843, 0.729736764354986]),
        (10.160809962796314, [-0.683728202393843, -0.729736764354986]),
        (-0.082834633027136, [0.244984174057343, 0.969527077735038]),
        (0.082834633027137, [-0.244984174057343, -0.969527077735037]),
        (-0.047987649852472, [-0.241128330260047, 0.970493239721948]),
        (0.047987649852474, [0.241128330260047, -0.970493239721948]),
    ] {
        assert!(has_pair(&z, lambda, x), "missing {lambda}");
    }
    let h = h_eigenpairs(&a, &Budget::default()).unwrap();
    assert_eq!(h.len(), 4);
    for (lambda, x) in [
        (-14.933_034_373_659_26, [0.968110177664507, 1.0]),
        (-14.933_034_373_659_26, [-0.968110177664507, 1.0]),
        (-0.066965626340749, [0.250524816939155, 1.0]),
        (-0.066965626340749, [-0.250524816939155, 1.0]),
    ] {
        assert!(has_pair(&h, lambda, x), "missing {lambda}");
    }
    for p in z.iter().chain(&h) {
        assert!(eigen_defect(&a, p.kind, p.lambda, &p.x).unwrap() <= 1e-9);
    }
    // R but not ER: the nonnegative Z-eigenvectors carry negative eigenvalues
    assert!(z.iter().any(|p| p.is_nonnegative() && p.lambda < 0.0 && p.kind == EigenKind::Z));
}

#[test]
fn diagonal_fixture() {
    let a = fixture("diagonal.json");
    let z = z_eigenpairs(&a, &Budget::default()).unwrap();
    assert!(has_pair(&z, 2.0, [1.0, 0.0]));
    assert!(has_pair(&z, 3.0, [0.0, 1.0]));
    assert_eq!(a.form(&[1.0, 2.0]).unwrap(), 2.0 + 3.0 * 8.0);
    let v = classify(&a, ClassId::StrictlySemiPositive, &Budget::default()).unwrap();
    assert_eq!((v.status, v.method), (Status::Member, Method::ExhaustiveN2));
}

#[test]
fn example_32_solution_set() {
    let inst = TcpInstance::new(fixture("ex32.json"), vec![-1.0, -1.0]).unwrap();
    let en = enumerate_solutions(&inst, &Budget::default()).unwrap();
    let xs: Vec<_> = en.solutions.iter().map(|s| s.x.clone()).collect();
    assert_eq!(xs, vec![vec![1.0, 0.0]]);
}
