namespace qaff {}
