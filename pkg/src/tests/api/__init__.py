# API tests package