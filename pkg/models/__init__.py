# models package