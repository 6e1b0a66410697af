function Keys() {}
Keys.ENTER = 13;
Keys.ESC = 27;
module.exports = Keys;
