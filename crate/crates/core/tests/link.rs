use num_complex::Complex64;
use rama_sim::channel::{sample_rayleigh, RngState, User};
use rama_sim::transceiver::{rama1_transmit, rama2_transmit, receive, superpose};
use rama_sim::{make_psk, make_qam, Constellation, PowerAllocation};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn sym(c: &Constellation, i: usize) -> Complex64 {
    c.point(i).unwrap()
}

fn detect(c: &Constellation, y: Complex64) -> usize {
    c.nearest(y).0
}

#[test]
fn rama2_users_detect_own_symbols_through_fading() {
    let qam = make_qam(16).unwrap();
    let mut rng = RngState::new(2024);
    for split in [0.1, 0.3, 0.5, 0.7, 0.9] {
        let alloc = PowerAllocation::from_fraction(1.0, split).unwrap();
        for _ in 0..200 {
            let ch = sample_rayleigh(&mut rng, 1.0, 0.1, 1.0).unwrap();
            let i = (rng.next_u64() % 16) as usize;
            let j = (rng.next_u64() % 16) as usize;
            let (s1, s2) = (sym(&qam, i), sym(&qam, j));
            let tx = rama2_transmit(s1, s2, &alloc).unwrap();
            for (user, sent, idx) in [(User::One, s1, i), (User::Two, s2, j)] {
                let y = receive(tx.beam(user), &ch, user, ZERO);
                let est = y / (ch.h(user) * alloc.power(user).sqrt());
                assert!((est - sent).norm() < 1e-9);
                assert_eq!(detect(&qam, est), idx);
            }
        }
    }
}

#[test]
fn rama1_users_detect_own_symbols_with_small_noise() {
    let psk = make_psk(8).unwrap();
    let mut rng = RngState::new(7);
    for _ in 0..2000 {
        let ch = sample_rayleigh(&mut rng, 1.0, 1.0, 1.0).unwrap();
        let i = (rng.next_u64() % 8) as usize;
        let j = (rng.next_u64() % 8) as usize;
        let tx = rama1_transmit(sym(&psk, i), sym(&psk, j), 1.0).unwrap();
        for (user, idx) in [(User::One, i), (User::Two, j)] {
            let noise = rng.complex_gaussian(1e-8);
            let y = receive(tx.beam(user), &ch, user, noise);
            // Deep fades can still bury a symbol; skip those draws.
            if ch.gamma(user) < 1e-4 {
                continue;
            }
            assert_eq!(detect(&psk, y / (ch.h(user) * 0.5f64.sqrt())), idx);
        }
    }
}

#[test]
fn noma_strong_user_cancels_weak_symbol() {
    let qpsk = make_psk(4).unwrap();
    let alloc = PowerAllocation::from_fraction(1.0, 0.2).unwrap();
    let mut rng = RngState::new(99);
    for _ in 0..500 {
        let ch = sample_rayleigh(&mut rng, 10.0, 1.0, 1.0).unwrap();
        let i = (rng.next_u64() % 4) as usize;
        let j = (rng.next_u64() % 4) as usize;
        let x = superpose(sym(&qpsk, i), sym(&qpsk, j), &alloc);
        let y = receive(x, &ch, User::One, ZERO) / ch.h(User::One);

        let weak = detect(&qpsk, y / alloc.p2().sqrt());
        assert_eq!(weak, j);
        let residual = y - sym(&qpsk, weak) * alloc.p2().sqrt();
        assert_eq!(detect(&qpsk, residual / alloc.p1().sqrt()), i);
    }
}
