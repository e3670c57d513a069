//! Temporary probe: which entries fail the graded/embedding token checks
//! after the display sign correction, and what do the differences look like.

use rttk_core::grading::{
    in_filtration, lambda_display, lambda_graded_rhs, shat_image_gamma, FiltrationSpec,
};
use rttk_core::scalars::QRational;
use rttk_core::superlinalg::{SuperSpace, TwistedIndex};

fn psign(on: bool) -> i64 {
    if on {
        -1
    } else {
        1
    }
}

fn main() {
    for space in [SuperSpace::new(0, 2), SuperSpace::new(1, 2)] {
        let index = TwistedIndex::new(space).unwrap();
        let dim = space.dim();
        for m in 0..=1i32 {
            let spec = FiltrationSpec::new(m + 1, 2, 2 * m + 8);
            for i in 1..=dim {
                for j in 1..=dim {
                    let disp = lambda_display(&index, 1, m, i, j).unwrap();
                    let rhs = lambda_graded_rhs(&index, m, i, j).unwrap();
                    let d = disp.sub(&rhs);
                    let graded_ok = in_filtration(&space, &spec, &d).is_some();
                    let plain = QRational::from_int(psign(space.parity(j) == 1));
                    let e = shat_image_gamma(&index, m, i, j)
                        .unwrap()
                        .sub(&rhs.scale(&plain));
                    let embed_ok = in_filtration(&space, &spec, &e).is_some();
                    if !graded_ok || !embed_ok {
                        println!(
                            "space=({},{}) m={m} ({i},{j}) |i|={} |j|={}: graded={} embed={}",
                            space.m,
                            space.n,
                            space.parity(i),
                            space.parity(j),
                            graded_ok,
                            embed_ok
                        );
                        if !graded_ok {
                            println!("  graded diff: {d}");
                        }
                        if !embed_ok {
                            println!("  embed diff: {e}");
                        }
                    }
                }
            }
        }
    }
}
