use fusible_core::hierarchy::{fgh, hardy};
use fusible_core::ordinal::{random_ordinal, GenConfig, Ordinal};
use fusible_core::Budget;
use std::time::Instant;

// tiny deterministic rng stand-in to avoid extra deps in the probe
struct XorShift(u64);
impl rand::RngCore for XorShift {
    fn next_u32(&mut self) -> u32 { self.next_u64() as u32 }
    fn next_u64(&mut self) -> u64 {
        self.0 ^= self.0 << 13; self.0 ^= self.0 >> 7; self.0 ^= self.0 << 17; self.0
    }
    fn fill_bytes(&mut self, dest: &mut [u8]) {
        for b in dest.iter_mut() { *b = self.next_u64() as u8; }
    }
    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> Result<(), rand::Error> {
        self.fill_bytes(dest); Ok(())
    }
}

fn main() {
    let mut rng = XorShift(2024);
    let cfg = GenConfig { max_depth: 2, max_terms: 2, max_coeff: 3 };
    let big = |k: u64| num::BigUint::from(k);
    for i in 0..50 {
        let a = random_ordinal(&mut rng, &cfg);
        for k in 1..=4u64 {
            let t = Instant::now();
            let f = fgh(&a, &big(k), &mut Budget::with_steps(50_000));
            let tf = t.elapsed();
            let t = Instant::now();
            let h = hardy(&Ordinal::omega_power(&a), &big(k), &mut Budget::with_steps(50_000));
            let th = t.elapsed();
            if tf.as_millis() > 200 || th.as_millis() > 200 {
                println!("SLOW i={i} a={a} k={k} fgh={tf:?} ({}) hardy={th:?} ({})",
                    f.is_ok(), h.is_ok());
            }
        }
    }
    println!("done");
}
