use cremona_core::algebra::{rat, RatFn, Rational};
use cremona_core::birmap::{AffineMap, ProjMap};
use cremona_core::jonquieres::{JonqElt, Mat2K};
use cremona_core::simplicity::{simplicity_pipeline, SimplicityOptions};

fn lin(rows: &[&[i64]]) -> ProjMap {
    let m: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
    ProjMap::linear(&m).unwrap()
}

fn run(h: &ProjMap, seed: u64) {
    let opts = SimplicityOptions { seed, ..Default::default() };
    let run = simplicity_pipeline(h, &opts).unwrap();
    for (name, ok) in &run.checks.0 {
        assert!(ok, "{name}");
    }
}

#[test]
fn sigma_in_space() {
    run(&ProjMap::standard_involution(3), 1);
}

#[test]
fn quadratic_jonquieres_times_linear() {
    // (x, y) ↦ (x, (x y + 1) / y)
    let x = RatFn::var(1, 0);
    let one = RatFn::one(1);
    let a = Mat2K::new([x.clone(), one.clone(), one.clone(), RatFn::zero(1)]).unwrap();
    let e = JonqElt::new(a, AffineMap::identity(1)).unwrap();
    let j = e.embed().unwrap().to_proj().unwrap();
    assert_eq!(j.degree(), 2);
    let l = lin(&[&[1, 2, 0], &[0, 1, 1], &[1, 0, 3]]);
    run(&j.compose(&l).unwrap(), 2);
}
