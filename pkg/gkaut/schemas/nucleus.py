from pydantic import BaseModel


class NucleusReport(BaseModel):
    side: str  # "right" | "middle"
    dimension: int
    unit_count: int
    field_size: int
    field_degree: int
    generator: list[list[int]]
    generator_order: int
    closed_under_addition: bool
    closed_under_multiplication: bool
    commutative: bool
    all_units_invertible: bool
    predicted_form: str
    match: bool
    literal_match: bool

    @property
    def is_field(self) -> bool:
        return (
            self.closed_under_addition
            and self.closed_under_multiplication
            and self.commutative
            and self.all_units_invertible
            and self.unit_count == self.field_size - 1
        )
