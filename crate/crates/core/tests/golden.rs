mod common;

#[test]
fn worked_products_and_coproducts() {
    let (count, bad) = common::check_worked();
    assert_eq!(count, 4);
    assert!(bad.is_empty(), "{:#?}", bad);
}

#[test]
fn descent_basis_tables() {
    let (count, bad) = common::check_basis_tables();
    assert_eq!(count, 1 + 3 + 10);
    assert!(bad.is_empty(), "{:#?}", bad);
}

#[test]
fn tables_are_in_canonical_order() {
    for (n, rows) in common::basis_tables() {
        for (_, v) in rows {
            let x = common::biwords(&v);
            assert_eq!(x.to_string(), v, "n={}", n);
        }
    }
}
