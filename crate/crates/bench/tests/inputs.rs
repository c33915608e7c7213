use sgflop::weights::lr_coefficient;
use sgflop::Partition;
use sgflop_bench::{ambient, square, staircase};

#[test]
fn shapes() {
    assert_eq!(staircase(4).parts(), &[4, 3, 2, 1]);
    assert_eq!(square(3).size(), 9);
    assert_eq!(ambient(2, 5).dim(), 6);
}

#[test]
fn staircase_squared_has_multiplicity_two() {
    let s = staircase(2);
    assert_eq!(lr_coefficient(&staircase(3), &s, &s), 2);
    assert_eq!(lr_coefficient(&square(2), &s, &square(1)), 1);
    assert_eq!(lr_coefficient(&Partition::row(4), &s, &square(1)), 0);
}
