use std::io::Write;
use std::sync::Mutex;

use pwlab::acceptance::{run, Suite};

// criteria time themselves, so they must not share the CPU
static SERIAL: Mutex<()> = Mutex::new(());

fn criterion(suite: Suite) {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let v = run(suite);
    // straight to the stream so the verdict shows even when output is captured
    let mut err = std::io::stderr().lock();
    writeln!(err, "{}", v.line()).unwrap();
    for f in &v.failures {
        writeln!(err, "  {f}").unwrap();
    }
    drop(err);
    assert!(v.passed, "{}", v.line());
}

#[test]
fn criterion_01_shannon_identity() {
    criterion(Suite::Shannon);
}

#[test]
fn criterion_02_reproducing_identity() {
    criterion(Suite::Reproducing);
}

#[test]
fn criterion_03_eigensweep() {
    criterion(Suite::Eigensweep);
}

#[test]
fn criterion_04_coefficient_bound() {
    criterion(Suite::Coefficients);
}

#[test]
fn criterion_05_overlap_bound() {
    criterion(Suite::Overlap);
}

#[test]
fn criterion_06_weighted_young() {
    criterion(Suite::Young);
}

#[test]
fn criterion_07_fat_cantor() {
    criterion(Suite::Cantor);
}

#[test]
fn criterion_08_lacunary_spectrum() {
    criterion(Suite::Lacunary);
}

#[test]
fn criterion_09_frame_reconstruction() {
    criterion(Suite::Frames);
}

#[test]
fn criterion_10_oscillation_decay() {
    criterion(Suite::Oscillation);
}
