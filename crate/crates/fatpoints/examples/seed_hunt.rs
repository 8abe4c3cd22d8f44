use std::time::Instant;
use fatpoints_core::baselocus::{probe_dimension, ProbeConfig, ProbeVerdict};
use fatpoints_core::divisor::DivisorClass;
use fatpoints_core::interpolation::{check_speciality, h0, PointSet};
use fatpoints_core::{Exec, PrimeField};

fn main() {
    let f101 = PrimeField::new(101).unwrap();
    let d = DivisorClass::new(4, 8, vec![4; 14]).unwrap();

    let t0 = Instant::now();
    for seed in [7u64, 0, 1, 2] {
        let pts = PointSet::random(f101, 4, 14, seed).unwrap();
        let rep = h0(&d, &pts, Exec::Parallel).unwrap();
        println!("seed {seed}: h0={} rank={} v={} status={:?}", rep.h0, rep.rank, rep.v, rep.status);
    }
    println!("4x h0 elapsed: {:?}", t0.elapsed());

    let t0 = Instant::now();
    let check = check_speciality(&d, &[7, 8, 9], &[101], Exec::Parallel).unwrap();
    println!("check_speciality 3 trials: h0={} status={:?} elapsed {:?}", check.aggregate.h0, check.aggregate.status, t0.elapsed());

    // probe k=3 on the (8; 4^14) system
    let pts = PointSet::random(f101, 4, 14, 7).unwrap();
    for seed in 0..4u64 {
        let t1 = Instant::now();
        let cfg = ProbeConfig { section_dims: vec![3], trials: 5, seed, ..ProbeConfig::default() };
        let r = probe_dimension(&d, &pts, &cfg, Exec::Parallel).unwrap();
        let zf = r[0].zero_counts.iter().filter(|&&c| c == 0).count();
        println!("probe seed {seed}: counts={:?} zero-free={zf} verdict={:?} elapsed {:?}",
                 r[0].zero_counts, r[0].verdict, t1.elapsed());
    }

    // sequential timing for budget check
    let t2 = Instant::now();
    let cfg = ProbeConfig { section_dims: vec![3], trials: 5, seed: 0, ..ProbeConfig::default() };
    let _ = probe_dimension(&d, &pts, &cfg, Exec::Sequential).unwrap();
    println!("sequential probe elapsed {:?}", t2.elapsed());
}
