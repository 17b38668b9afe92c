namespace opdcat {}
