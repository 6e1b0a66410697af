function Session(req, data) {
  this.req = req;
  this.id = req.sessionID;
  if (typeof data === 'object' && data !== null) {
    for (var prop in data) {
      if (!(prop in this)) {
        this[prop] = data[prop];
      }
    }
  }
}

Session.prototype.touch = function() {
  return this.resetMaxAge();
};

Session.prototype.resetMaxAge = function() {
  this.cookie.maxAge = this.cookie.originalMaxAge;
  return this;
};

module.exports = Session;
