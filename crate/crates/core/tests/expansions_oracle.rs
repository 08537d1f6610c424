mod common;

#[test]
fn sweep_against_direct_sums() {
    assert_eq!(common::expansion_sweep(), Ok(42));
}
