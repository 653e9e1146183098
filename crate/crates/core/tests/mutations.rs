use rba::fixtures;
use rba::modal::check_mrba;
use rba::report::Law;

#[test]
fn example2_passes() {
    assert!(check_mrba(&fixtures::example2().unwrap()).passed());
}

/// Sending `f^K(1_R)` to `0_R` makes the operator constant on the red block,
/// which every law still admits.
#[test]
fn red_top_to_red_bottom_is_admitted() {
    let m = fixtures::example2().unwrap();
    let a = &m.algebra;
    let bad = m.with_fk_entry(a.find("1_R").unwrap(), a.find("0_R").unwrap());
    let r = check_mrba(&bad);
    assert!(r.passed(), "{r}");
}

#[test]
fn blue_top_to_blue_bottom_violates_f2() {
    let m = fixtures::example2().unwrap();
    let a = &m.algebra;
    let bad = m.with_fk_entry(a.find("1_B").unwrap(), a.find("0_B").unwrap());
    let r = check_mrba(&bad);
    assert!(r.violates(Law::F2), "{r}");
}

#[test]
fn operator_leaving_the_domain_violates_f1() {
    let m = fixtures::example2().unwrap();
    let a = &m.algebra;
    let bad = m.with_fk_entry(a.find("X_B").unwrap(), a.find("X_R").unwrap());
    assert!(check_mrba(&bad).violates(Law::F1));
}
