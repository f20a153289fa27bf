use std::time::Instant;

use cremona_core::algebra::{rat, Rational};
use cremona_core::birmap::{compose_chain, ProjMap};
use cremona_core::paths::{connect_to_identity, verify_path, ConnectOptions};

fn lin(rows: &[&[i64]]) -> ProjMap {
    let m: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
    ProjMap::linear(&m).unwrap()
}

fn check(g: &ProjMap, seed: u64) {
    let start = Instant::now();
    let opts = ConnectOptions { seed, ..Default::default() };
    let p = connect_to_identity(g, &opts).unwrap();
    let built = start.elapsed();
    let rep = verify_path(&p, &ProjMap::identity(g.dim()), g, 5, seed);
    assert!(rep.passed(), "{rep:?}");
    eprintln!("size {} built {:?} total {:?}", p.size(), built, start.elapsed());
}

#[test]
fn quadratic_linear_quadratic() {
    let s = ProjMap::standard_involution(2);
    let a = lin(&[&[1, 1, 0], &[0, 1, 2], &[1, 0, 1]]);
    let b = lin(&[&[2, 0, 1], &[1, 1, 0], &[0, 3, 1]]);
    let g = compose_chain(&[a, s.clone(), b, s]).unwrap();
    assert!(g.has_inverse());
    check(&g, 11);
}

#[test]
fn sigma_three() {
    check(&ProjMap::standard_involution(3), 3);
}

#[test]
fn general_space_map() {
    let s = ProjMap::standard_involution(3);
    let a = lin(&[&[1, 1, 0, 0], &[0, 1, 2, 0], &[1, 0, 1, 1], &[0, 0, 1, 2]]);
    let g = compose_chain(&[a, s]).unwrap();
    let aff = g.to_affine().unwrap();
    assert!(!cremona_core::jonquieres::is_in_jn(&aff));
    check(&g, 5);
}
