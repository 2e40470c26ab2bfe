use exlab_core::cf::CfStream;
use std::time::Instant;

fn main() {
    let t0 = Instant::now();
    let mut s = CfStream::from_seed(42);
    s.ensure(100_000).unwrap();
    println!("1e5 digits: {:?} ({} bits)", t0.elapsed(), s.bits_consumed());

    let t0 = Instant::now();
    let mut s = CfStream::from_seed(43);
    s.ensure(1_000_000).unwrap();
    println!("1e6 digits: {:?} ({} bits)", t0.elapsed(), s.bits_consumed());

    let t0 = Instant::now();
    let t = s.trimmed_sum(1_000_000).unwrap();
    println!("trimmed: {:?} ratio={}", t0.elapsed(), t.ratio);

    let t0 = Instant::now();
    let mut s = CfStream::from_seed(44);
    let lv = s.levy_ratio(100_000).unwrap();
    println!("levy 1e5 (exact q): {:?} value={}", t0.elapsed(), lv);
}
