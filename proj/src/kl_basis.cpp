namespace klrr {}
