use abelfield::cyclotomic::{enumerate_abelian_fields, AbelianFieldSpec};
use abelfield::oracle::{default_bound, dump, OracleDump};
use abelfield::reconstruct::{judge, reconstruct_global, Verdict};
use abelfield::verify::discriminant;

#[test]
fn dumps_survive_serialization_and_rebuild() {
    for k in enumerate_abelian_fields(24).unwrap() {
        let b = default_bound(k.modulus());
        let text = dump(&k, b).unwrap().to_json();
        let loaded = OracleDump::from_json(&text).unwrap();
        assert_eq!(loaded.to_json(), text);
        let (v, report) = judge(reconstruct_global(&loaded), &k).unwrap();
        assert_eq!(v, Verdict::Match, "{k}");
        assert_eq!(report.unwrap().field, k);
    }
}

#[test]
fn spec_files_round_trip() {
    let k = AbelianFieldSpec::new(15, &[4]).unwrap();
    assert_eq!(AbelianFieldSpec::from_json(&k.to_json()).unwrap(), k);
    assert!(AbelianFieldSpec::from_json(r#"{"modulus": 0, "subgroup_generators": []}"#).is_err());
    assert!(AbelianFieldSpec::from_json(r#"{"modulus": 5, "subgroup_generators": [], "x": 1}"#).is_err());
}

#[test]
fn discriminant_of_the_pentagonal_field() {
    // Q(zeta_5) has |disc| = 5^3, its real subfield 5
    assert_eq!(discriminant(&AbelianFieldSpec::cyclotomic(5).unwrap()).unwrap(), 125u32.into());
    assert_eq!(discriminant(&AbelianFieldSpec::new(5, &[4]).unwrap()).unwrap(), 5u32.into());
}
