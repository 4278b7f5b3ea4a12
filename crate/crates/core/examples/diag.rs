use probcomb::littlewood::*;

fn main() {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(256);
    let gamma = 1.0/32.0;
    let delta = gamma/4.0;
    let cosine = build_cosine_part(n, gamma).unwrap();
    let shifted = cosine.handle(0.5);
    let det_grid = 32*n;
    let cgrid = shifted.eval_grid(det_grid);
    let sqrt_n = (n as f64).sqrt();
    let thr = delta*sqrt_n;
    let limits = IntervalLimits::from_constants(n, gamma, 4.0, 64.0, 1.0/64.0);
    let set = detect_bad_intervals_from_grid(&cgrid, thr, delta, limits).unwrap();
    let in_c = |k: u32| (cosine.big_t..3*cosine.big_t).contains(&k);
    let s_freqs: Vec<u32> = (1..=2*n as u32).filter(|&k| !in_c(k)).collect();
    let gn = gamma*n as f64;
    let plan = choose_interval_signs(&set, &s_freqs, gn, 4.5, 3, 8).unwrap();
    let len = 4*n+1;
    let target_min = 0.02*(len as f64).sqrt();
    let config = FlatConfig::default();

    // per-interval push health
    let mut dead = 0;
    for iv in set.intervals.iter() {
        let m: f64 = s_freqs.iter().zip(&plan.deltas).map(|(&k,&d)| d*((k as f64)*iv.mid()).sin()).sum();
        if m.abs() < 100.0 { dead += 1; }
    }
    eprintln!("n={n}: {} intervals, {} dead-ish", set.count, dead);

    for gain in [2.0, 4.0, 8.0] {
        match build_sine_part(&plan, &set, &s_freqs, n, 42, gain, &config) {
            Ok(eps) => {
                let poly = LittlewoodPoly::from_parts(n, gamma, 1, cosine.freqs.clone(), &cosine.coeffs, s_freqs.clone(), &eps).unwrap();
                let rep = flatness_report(&poly, 64);
                // where is the min? check Re f and s there
                let x = rep.argmin;
                let re = 1.0 + 2.0*(shifted.eval(x) - 0.5);
                let amps: Vec<f64> = eps.iter().map(|&e| f64::from(e)).collect();
                let sp = TrigPoly::sine(s_freqs.clone(), amps);
                let sv = sp.eval(x);
                let near_iv = set.intervals.iter().position(|iv| x >= iv.lo - 0.01 && x <= iv.hi + 0.01);
                eprintln!("gain {gain}: flat min {:.3} (need {:.3}) max {:.1}, at x={:.4}: Re f={:.3} 2s={:.3} near_iv={:?}",
                    rep.min_abs, target_min, rep.max_abs, x, re, 2.0*sv, near_iv);
            }
            Err(e) => eprintln!("gain {gain}: sine FAIL: {e}"),
        }
    }
}
